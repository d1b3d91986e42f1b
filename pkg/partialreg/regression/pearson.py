"""Closed-form algebra of the two-regressor case.

All inputs are simple-regression slopes. With ``beta_y_x2 = 0`` the full fit
collapses onto a single coefficient on the residualized X1, which is larger
than the simple slope while the residualized X1 has less variance: a bigger
multiple of a smaller quantity.
"""

import logging
import math

import numpy as np
from numpy.typing import NDArray

from partialreg.config import get_settings
from partialreg.errors import DegenerateCorrelationError, ScenarioInputError
from partialreg.models.dataset import Dataset
from partialreg.models.pearson import PearsonScenario
from partialreg.models.report import AmplificationReport, DeltaIdentityReport
from partialreg.regression.core_ols import fit_ols, simple_beta
from partialreg.regression.synthetic import exact_moment_sample

logger = logging.getLogger(__name__)

SCENARIO_COLUMNS = ("x1", "x2", "y")


def _one_minus_rho_sq(s: PearsonScenario) -> float:
    if s.rho_sq >= 1.0:
        raise DegenerateCorrelationError(s.rho_sq)
    return 1.0 - s.rho_sq


def multivariate_beta1(s: PearsonScenario) -> float:
    """(beta_y_x1 - beta_y_x2 * beta_x2_x1) / (1 - rho^2)."""
    return (s.beta_y_x1 - s.beta_y_x2 * s.beta_x2_x1) / _one_minus_rho_sq(s)


def multivariate_beta2(s: PearsonScenario) -> float:
    """(beta_y_x2 - beta_y_x1 * beta_x1_x2) / (1 - rho^2)."""
    return (s.beta_y_x2 - s.beta_y_x1 * s.beta_x1_x2) / _one_minus_rho_sq(s)


def attenuation_scenario(beta_y_x1: float, beta_x1_x2: float, beta_x2_x1: float) -> tuple[float, float]:
    """Coefficients on (X1, X2) when X2 alone does not predict Y.

    The X2 coefficient is -beta_y_x1 * beta_x1_x2 / (1 - rho^2): negative
    whenever all inputs are positive.
    """
    s = PearsonScenario(beta_y_x1=beta_y_x1, beta_y_x2=0.0, beta_x2_x1=beta_x2_x1, beta_x1_x2=beta_x1_x2)
    return multivariate_beta1(s), multivariate_beta2(s)


def population_covariance(s: PearsonScenario, var_x1: float = 1.0, residual_var: float = 1.0) -> NDArray[np.float64]:
    """Covariance of (x1, x2, y) realizing the scenario.

    V(X2) follows from the ratio of the two regressor slopes (unit ratio when
    both are zero); V(Y) is the explained variance plus ``residual_var``.
    """
    if var_x1 <= 0.0 or residual_var <= 0.0:
        raise ScenarioInputError("var_x1 and residual_var must be positive")
    c12 = s.beta_x2_x1 * var_x1
    var_x2 = c12 / s.beta_x1_x2 if s.beta_x1_x2 != 0.0 else var_x1
    c1y = s.beta_y_x1 * var_x1
    c2y = s.beta_y_x2 * var_x2

    b = np.array([multivariate_beta1(s), multivariate_beta2(s)])
    sigma_xx = np.array([[var_x1, c12], [c12, var_x2]])
    var_y = float(b @ sigma_xx @ b) + residual_var
    return np.array(
        [
            [var_x1, c12, c1y],
            [c12, var_x2, c2y],
            [c1y, c2y, var_y],
        ]
    )


def scenario_sample(s: PearsonScenario, n: int, seed: int, var_x1: float = 1.0) -> Dataset:
    """Exact-moment (x1, x2, y) sample whose simple slopes are those of ``s``."""
    return exact_moment_sample(population_covariance(s, var_x1=var_x1), n, seed, SCENARIO_COLUMNS)


def scenario_from_sample(data: Dataset, x1: str = "x1", x2: str = "x2", y: str = "y") -> PearsonScenario:
    """Measure the four simple slopes on a centered sample."""
    c1, c2, cy = data.column(x1), data.column(x2), data.column(y)
    return PearsonScenario(
        beta_y_x1=simple_beta(c1, cy, x1),
        beta_y_x2=simple_beta(c2, cy, x2),
        beta_x2_x1=simple_beta(c1, c2, x1),
        beta_x1_x2=simple_beta(c2, c1, x2),
    )


def _require_zero_y_x2(s: PearsonScenario) -> None:
    if s.beta_y_x2 != 0.0:
        raise ScenarioInputError(f"Scenario needs beta_y_x2 = 0, got {s.beta_y_x2}")


def check_delta_identity(
    s: PearsonScenario,
    sample: Dataset,
    *,
    x1: str = "x1",
    x2: str = "x2",
    y: str = "y",
    tolerance: float | None = None,
) -> DeltaIdentityReport:
    """Check that the two-coefficient fit equals beta1 * (X1 - beta_x1_x2 X2) on ``sample``.

    The relative gap equals |sample beta_y_x2| * ||X2|| / ||fitted||, so a
    sample that does not honour beta_y_x2 = 0 is reported, not passed.
    """
    _require_zero_y_x2(s)
    if tolerance is None:
        tolerance = get_settings().numerics.tolerance

    fit = fit_ols(sample, y, [x1, x2])
    beta1, beta2 = float(fit.beta[0]), float(fit.beta[1])
    c1, c2, cy = sample.column(x1), sample.column(x2), sample.column(y)
    slope_x1_x2 = simple_beta(c2, c1, x2)
    slope_y_x2 = simple_beta(c2, cy, x2)

    collapsed = beta1 * (c1 - slope_x1_x2 * c2)
    fitted_norm = float(np.linalg.norm(fit.fitted))
    gap = float(np.linalg.norm(fit.fitted - collapsed))
    relative_gap = gap / fitted_norm if fitted_norm > 0.0 else gap
    holds = relative_gap <= tolerance

    if holds:
        message = (
            f"Fitted surface equals {beta1:.6g} * ({x1} - {slope_x1_x2:.6g} * {x2}) "
            f"(relative gap {relative_gap:.3e} <= {tolerance:.1e})"
        )
    else:
        message = (
            f"Mismatch: sample slope of {y} on {x2} is {slope_y_x2:.6g}, the scenario requires 0; "
            f"relative gap {relative_gap:.3e} exceeds {tolerance:.1e}"
        )
    logger.info(message)
    return DeltaIdentityReport(
        holds=holds,
        tolerance=tolerance,
        relative_gap=relative_gap,
        beta1=beta1,
        beta2=beta2,
        sample_beta_x1_x2=slope_x1_x2,
        sample_beta_y_x2=slope_y_x2,
        message=message,
    )


def amplification_and_variance(s: PearsonScenario, var_x1: float = 1.0) -> AmplificationReport:
    """Population algebra behind the amplified coefficient when beta_y_x2 = 0."""
    _require_zero_y_x2(s)
    shrink = _one_minus_rho_sq(s)
    amplified = multivariate_beta1(s)
    delta_variance = var_x1 * shrink
    fitted_variance = amplified**2 * delta_variance
    simple_fitted_variance = s.beta_y_x1**2 * var_x1
    ratio = fitted_variance / simple_fitted_variance if simple_fitted_variance > 0.0 else 1.0 / shrink

    covariance = population_covariance(s, var_x1=var_x1)
    cov_y_x1 = float(covariance[0, 2])
    cov_y_delta = float(covariance[0, 2] - s.beta_x1_x2 * covariance[1, 2])

    return AmplificationReport(
        simple_beta=s.beta_y_x1,
        amplified_beta=amplified,
        amplification_factor=1.0 / shrink,
        var_x1=var_x1,
        delta_variance=delta_variance,
        fitted_variance=fitted_variance,
        simple_fitted_variance=simple_fitted_variance,
        variance_ratio=ratio,
        cov_y_x1=cov_y_x1,
        cov_y_delta=cov_y_delta,
        beta_amplified=abs(amplified) >= abs(s.beta_y_x1),
        variance_amplified=fitted_variance >= simple_fitted_variance,
        covariance_preserved=math.isclose(cov_y_delta, cov_y_x1, rel_tol=1e-12, abs_tol=1e-15),
    )
