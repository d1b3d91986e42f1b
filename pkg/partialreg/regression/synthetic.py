"""Gaussian samples with a controllable endogeneity dial.

Draws come from numpy's PCG64 generator: ``Generator(PCG64(seed))`` and
``standard_normal`` of shape (n, k + 1) in row-major order, recoloured by the
lower-triangular square root of the (X, eps) covariance with columns in
declared order. The same seed therefore reproduces the same dataset.
"""

import logging
import math
import sys
from collections.abc import Sequence

import numpy as np
from numpy.typing import ArrayLike, NDArray
from scipy import linalg
from tqdm import tqdm

from partialreg.errors import CovarianceError, InputValidationError
from partialreg.models.dataset import Dataset
from partialreg.models.fit import RegressionFit
from partialreg.models.report import BiasReport, ConvergencePoint, ConvergenceStudy
from partialreg.models.simulation import SimulationResult, SimulationSpec, TruthRecord
from partialreg.regression.core_ols import center, fit_ols, require_centered

logger = logging.getLogger(__name__)

SEED_MODULUS = 2**64
PAUPERISM_STANDIN_LABEL = "SYNTHETIC STAND-IN for the pauperism variables; not historical data"


def make_rng(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(seed))


def population_gamma(spec: SimulationSpec) -> NDArray[np.float64]:
    """Best-linear-predictor coefficients beta + inv(Sigma_xx) cov(X, eps)."""
    factor = linalg.cho_factor(spec.covariance_xx(), lower=True)
    bias = linalg.cho_solve(factor, np.asarray(spec.sigma_x_eps, dtype=np.float64))
    gamma: NDArray[np.float64] = np.asarray(spec.beta_structural, dtype=np.float64) + bias
    return gamma


def monte_carlo_se(spec: SimulationSpec, n: int | None = None) -> NDArray[np.float64]:
    """Sampling standard deviation of each fitted coefficient around its population value.

    Uses Var(Y - X gamma) * diag(inv(Sigma_xx)) / n; (X, Y - X gamma) is
    jointly Gaussian and uncorrelated, so the homoskedastic form is exact
    asymptotically even under endogeneity.
    """
    n = spec.n if n is None else n
    sigma = spec.covariance_xx()
    beta = np.asarray(spec.beta_structural, dtype=np.float64)
    cross = np.asarray(spec.sigma_x_eps, dtype=np.float64)
    gamma = population_gamma(spec)

    var_y = float(beta @ sigma @ beta + 2.0 * beta @ cross + spec.sigma_eps**2)
    var_u = max(var_y - float(gamma @ sigma @ gamma), 0.0)
    inverse_diag = np.diag(linalg.inv(sigma))
    se: NDArray[np.float64] = np.sqrt(var_u * inverse_diag / n)
    return se


def generate(spec: SimulationSpec) -> SimulationResult:
    """Draw (X, eps), form Y = X beta + eps, and center."""
    root = spec.extended_root()
    rng = make_rng(spec.seed)
    draws = rng.standard_normal((spec.n, spec.k + 1)) @ root.T
    x = draws[:, : spec.k]
    epsilon = draws[:, spec.k]
    beta = np.asarray(spec.beta_structural, dtype=np.float64)
    y = x @ beta + epsilon

    raw = Dataset(column_names=(*spec.names, spec.response_name), values=np.column_stack([x, y]))
    logger.debug("Generated %d x %d sample (seed=%d)", spec.n, spec.k + 1, spec.seed)
    return SimulationResult(
        raw=raw,
        dataset=center(raw),
        truth=TruthRecord(beta_structural=beta, epsilon=epsilon, gamma_population=population_gamma(spec)),
    )


def bias_report(spec: SimulationSpec, fit: RegressionFit) -> BiasReport:
    """Fitted gamma against the structural beta and the population gamma."""
    gamma_hat = np.asarray(fit.beta)
    beta = np.asarray(spec.beta_structural, dtype=np.float64)
    gamma = population_gamma(spec)
    return BiasReport(
        regressors=list(fit.regressor_names),
        gamma_hat=gamma_hat.tolist(),
        beta_structural=beta.tolist(),
        gamma_population=gamma.tolist(),
        gap_to_structural=(gamma_hat - beta).tolist(),
        gap_to_population=(gamma_hat - gamma).tolist(),
        monte_carlo_se=monte_carlo_se(spec, fit.n_obs).tolist(),
        r_squared=fit.r_squared,
        n=fit.n_obs,
    )


def _check_covariance(target: NDArray[np.float64]) -> NDArray[np.float64]:
    if target.ndim != 2 or target.shape[0] != target.shape[1]:
        raise CovarianceError(f"Target covariance must be square, got shape {target.shape}")
    if not np.allclose(target, target.T, rtol=0.0, atol=1e-12 * max(1.0, float(np.max(np.abs(target))))):
        raise CovarianceError("Target covariance is not symmetric")
    try:
        return np.linalg.cholesky(target)
    except np.linalg.LinAlgError:
        raise CovarianceError("Target covariance is not positive definite") from None


def exact_moment_sample(
    target_cov: ArrayLike,
    n: int,
    seed: int,
    names: Sequence[str] | None = None,
) -> Dataset:
    """Centered n-row sample whose covariance (divisor n) equals ``target_cov``.

    A standard-normal draw is centered, orthonormalized, and recoloured with
    the Cholesky factor of the target.
    """
    target = np.asarray(target_cov, dtype=np.float64)
    root = _check_covariance(target)
    dim = target.shape[0]
    if n <= dim:
        raise InputValidationError(f"Need n > {dim} rows for an exact-moment sample, got {n}")
    names = list(names) if names is not None else [f"x{j + 1}" for j in range(dim)]

    draw = make_rng(seed).standard_normal((n, dim))
    draw -= draw.mean(axis=0)
    q, r = np.linalg.qr(draw)
    q = q * np.sign(np.diag(r))
    values = math.sqrt(n) * q @ root.T
    return Dataset(column_names=tuple(names), values=values, centered=True)


def sample_covariance(data: Dataset) -> NDArray[np.float64]:
    """X'X / n over all columns of a centered dataset."""
    require_centered(data)
    covariance: NDArray[np.float64] = data.values.T @ data.values / data.n_rows
    return covariance


def convergence_study(
    spec: SimulationSpec,
    sizes: Sequence[int],
    seeds: int,
    progress: bool = False,
) -> ConvergenceStudy:
    """Mean |gamma_hat - gamma| per sample size and its log-log slope against n."""
    if len(sizes) < 2:
        raise InputValidationError("A convergence study needs at least two sample sizes")
    gamma = population_gamma(spec)
    points: list[ConvergencePoint] = []

    runs = [(n, s) for n in sizes for s in range(seeds)]
    iterable = tqdm(runs, desc="Convergence", unit="fit", file=sys.stderr) if progress else runs
    errors: dict[int, list[float]] = {n: [] for n in sizes}
    for n, offset in iterable:
        replica = spec.with_overrides(n=n, seed=(spec.seed + offset) % SEED_MODULUS)
        result = generate(replica)
        fit = fit_ols(result.dataset, replica.response_name, replica.names)
        errors[n].append(float(np.mean(np.abs(fit.beta - gamma))))

    for n in sizes:
        points.append(ConvergencePoint(n=n, mean_abs_error=float(np.mean(errors[n]))))
        logger.info("n=%d: mean |gamma_hat - gamma| = %.3e", n, points[-1].mean_abs_error)

    log_n = np.log([p.n for p in points])
    log_err = np.log([p.mean_abs_error for p in points])
    slope = float(np.polyfit(log_n, log_err, 1)[0])
    return ConvergenceStudy(seeds=seeds, points=points, slope=slope)


def pauperism_standin_spec(n: int = 600, seed: int = 1899) -> SimulationSpec:
    """Labelled synthetic data shaped like the pauperism regression; not historical values."""
    return SimulationSpec(
        k=3,
        sigma_xx=[[1.0, 0.4, 0.2], [0.4, 1.0, 0.3], [0.2, 0.3, 1.0]],
        beta=[0.75, 0.3, -0.2],
        sigma_eps=1.0,
        sigma_x_eps=[0.0, 0.0, 0.0],
        n=n,
        seed=seed,
        regressor_names=["outrelief_ratio_change", "age_distribution_change", "population_change"],
        response_name="pauperism_change",
        label=PAUPERISM_STANDIN_LABEL,
    )
