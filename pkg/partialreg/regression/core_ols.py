"""Centered least squares.

``fit_ols`` solves through a column-pivoted Householder QR factorization; the
normal-equations route (``normal_equations_oracle``) squares the condition
number and is kept only as an independent cross-check for tests.
"""

import logging
import warnings
from collections.abc import Sequence
from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray
from scipy import linalg

from partialreg.config import get_settings
from partialreg.errors import (
    DegeneracyError,
    DegenerateColumnError,
    DegenerateResponseError,
    DuplicateColumnError,
    EmptyDatasetError,
    InputValidationError,
    NonFiniteValueError,
    NotCenteredError,
    RankDeficiencyError,
    ResponseInRegressorsError,
    SingularMatrixError,
)
from partialreg.models.dataset import Dataset
from partialreg.models.fit import RegressionFit

logger = logging.getLogger(__name__)

Vector = NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class LeastSquaresSolution:
    beta: Vector
    fitted: Vector
    residuals: Vector
    rank: int
    condition: float


def _check_finite(
    values: NDArray[np.float64], names: Sequence[str], detail: str = "holds a non-finite value"
) -> None:
    for j, name in enumerate(names):
        bad = ~np.isfinite(values[:, j])
        if bad.any():
            raise NonFiniteValueError(name, int(np.argmax(bad)) + 1, detail)


def _column_means(values: NDArray[np.float64]) -> NDArray[np.float64]:
    """Column means computed on columns scaled to unit max, so the sum stays finite near the float64 limit."""
    scale = np.max(np.abs(values), axis=0)
    scale[scale == 0.0] = 1.0
    means: NDArray[np.float64] = (values / scale).mean(axis=0) * scale
    return means


def center(raw: Dataset) -> Dataset:
    """Subtract each column's sample mean, recording the means."""
    if raw.n_rows < 2:
        raise EmptyDatasetError(f"Need at least 2 rows to center, got {raw.n_rows}")
    _check_finite(raw.values, raw.column_names)

    values = np.array(raw.values, dtype=np.float64)
    col_means = _column_means(values)
    values -= col_means
    _check_finite(values, raw.column_names, "overflows float64 after centering")
    # second pass removes the rounding left by the first
    drift = _column_means(values)
    values -= drift
    means = np.asarray(raw.means) + col_means + drift

    logger.debug("Centered %d column(s) over %d row(s)", len(raw.column_names), raw.n_rows)
    return Dataset(column_names=raw.column_names, values=values, means=tuple(means), centered=True)


def require_centered(data: Dataset) -> None:
    if not data.centered:
        raise NotCenteredError("Dataset must be centered first (see center())")


def validate_design(data: Dataset, response: str, regressors: Sequence[str]) -> None:
    """Check the structural preconditions shared by every fitting routine."""
    require_centered(data)
    if not regressors:
        raise InputValidationError("At least one regressor is required")
    seen: set[str] = set()
    for name in regressors:
        if name in seen:
            raise DuplicateColumnError(name)
        seen.add(name)
    if response in seen:
        raise ResponseInRegressorsError(response)
    data.index(response)
    for name in regressors:
        data.index(name)
    if data.n_rows <= len(regressors):
        raise InputValidationError(
            f"Need more observations than regressors (n={data.n_rows}, k={len(regressors)})"
        )


def check_nondegenerate(x: NDArray[np.float64], names: Sequence[str]) -> None:
    for j, name in enumerate(names):
        if np.ptp(x[:, j]) == 0.0:
            raise DegenerateColumnError(name)


def solve_least_squares(
    x: NDArray[np.float64],
    y: Vector,
    names: Sequence[str],
    condition_threshold: float | None = None,
) -> LeastSquaresSolution:
    """Least squares of y on the columns of x via pivoted Householder QR.

    Raises RankDeficiencyError naming the column the pivoting found most
    dependent when the condition estimate exceeds the threshold.
    """
    if condition_threshold is None:
        condition_threshold = get_settings().numerics.condition_threshold
    k = x.shape[1]

    q, r, piv = linalg.qr(x, mode="economic", pivoting=True)
    diag = np.abs(np.diag(r))
    if diag[0] == 0.0:
        raise RankDeficiencyError(names[int(piv[0])], float("inf"))
    rank = int(np.sum(diag > max(x.shape) * np.finfo(np.float64).eps * diag[0]))
    condition = float(np.linalg.cond(r)) if rank == k else float("inf")
    if not condition <= condition_threshold:
        dependent = names[int(piv[min(rank, k - 1)])]
        raise RankDeficiencyError(dependent, condition)

    beta = np.empty(k, dtype=np.float64)
    beta[piv] = linalg.solve_triangular(r, q.T @ y)
    fitted = x @ beta
    return LeastSquaresSolution(beta=beta, fitted=fitted, residuals=y - fitted, rank=rank, condition=condition)


def _r_squared(residuals: Vector, y: Vector, name: str) -> float:
    tss = float(np.dot(y, y))
    if tss == 0.0:
        raise DegenerateResponseError(name)
    rss = float(np.dot(residuals, residuals))
    return float(np.clip(1.0 - rss / tss, 0.0, 1.0))


def fit_ols(
    data: Dataset,
    response: str,
    regressors: Sequence[str],
    *,
    condition_threshold: float | None = None,
) -> RegressionFit:
    """Least-squares fit of a centered response on centered regressors (no intercept column)."""
    validate_design(data, response, regressors)
    x = data.matrix(regressors)
    y = np.array(data.column(response))
    check_nondegenerate(x, regressors)

    solution = solve_least_squares(x, y, regressors, condition_threshold)
    r_squared = _r_squared(solution.residuals, y, response)
    logger.debug(
        "Fitted %s on %s: R2=%.6f, condition=%.3e", response, ", ".join(regressors), r_squared, solution.condition
    )
    return RegressionFit(
        response_name=response,
        regressor_names=tuple(regressors),
        beta=solution.beta,
        residuals=solution.residuals,
        fitted=solution.fitted,
        r_squared=r_squared,
        rank=solution.rank,
        condition_estimate=solution.condition,
        response_mean=data.mean_of(response),
        regressor_means=tuple(data.mean_of(name) for name in regressors),
    )


def normal_equations_oracle(data: Dataset, response: str, regressors: Sequence[str]) -> Vector:
    """Solve (X'X) b = X'Y by LU elimination with partial pivoting.

    Test oracle only: forming X'X squares the condition number.
    """
    validate_design(data, response, regressors)
    numerics = get_settings().numerics
    if data.n_rows > numerics.oracle_max_rows or len(regressors) > numerics.oracle_max_regressors:
        raise InputValidationError(
            f"Oracle is limited to n <= {numerics.oracle_max_rows} and k <= {numerics.oracle_max_regressors}"
        )
    x = data.matrix(regressors)
    y = data.column(response)
    xtx = x.T @ x
    xty = x.T @ y

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", linalg.LinAlgWarning)
        lu, piv = linalg.lu_factor(xtx)
    pivots = np.abs(np.diag(lu))
    if pivots.min() <= len(regressors) * np.finfo(np.float64).eps * pivots.max():
        raise SingularMatrixError("X'X is singular")
    solution: Vector = linalg.lu_solve((lu, piv), xty)
    return solution


def r_squared_of(fit: RegressionFit, y: Vector) -> float:
    """1 - RSS/TSS of ``fit`` against the centered response ``y``."""
    y = np.asarray(y, dtype=np.float64)
    return _r_squared(y - fit.fitted, y, fit.response_name)


def simple_beta(x: Vector, y: Vector, name: str = "x") -> float:
    """Univariate regression coefficient <x, y> / <x, x> on centered vectors."""
    denominator = float(np.dot(x, x))
    if denominator == 0.0:
        raise DegenerateColumnError(name)
    return float(np.dot(x, y)) / denominator


def sample_correlation(u: Vector, v: Vector) -> float:
    """Correlation of two centered vectors; symmetric in its arguments."""
    denominator = np.sqrt(float(np.dot(u, u)) * float(np.dot(v, v)))
    if denominator == 0.0:
        raise DegeneracyError("Correlation undefined for a zero-variance vector")
    return float(np.clip(float(np.dot(u, v)) / denominator, -1.0, 1.0))


def coefficient_scale(y: Vector, x: Vector) -> float:
    """Natural magnitude of a coefficient of y on x: ||y|| / ||x||."""
    x_norm = float(np.linalg.norm(x))
    return float(np.linalg.norm(y)) / x_norm if x_norm > 0.0 else 0.0


def betas_agree(a: float, b: float, rtol: float | None = None, scale: float = 0.0) -> bool:
    """Relative agreement with an absolute floor of ``rtol * scale``."""
    if rtol is None:
        rtol = get_settings().numerics.tolerance
    return abs(a - b) <= rtol * max(abs(a), abs(b), scale)
