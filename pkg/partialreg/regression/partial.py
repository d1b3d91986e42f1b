"""Partialling out and the partial regression theorem.

Every multivariate coefficient beta_j is recomputed as a univariate
regression on ``delta``: the focus column with the controls partialled out.
Version 1 regresses the raw response on ``delta``; version 2 regresses the
response with the controls partialled out as well. Both equal beta_j exactly
in exact arithmetic, because ``delta`` is orthogonal to every control.
"""

import logging
from collections.abc import Sequence
from concurrent.futures import ThreadPoolExecutor

import numpy as np

from partialreg.config import get_settings
from partialreg.errors import (
    DegeneracyError,
    DegenerateResidualError,
    DegenerateResponseError,
    EquivalenceError,
    InputValidationError,
)
from partialreg.models.dataset import Dataset
from partialreg.models.decomposition import PartialDecomposition
from partialreg.regression.core_ols import (
    Vector,
    betas_agree,
    check_nondegenerate,
    coefficient_scale,
    fit_ols,
    require_centered,
    sample_correlation,
    solve_least_squares,
    validate_design,
)

logger = logging.getLogger(__name__)


def residualize(data: Dataset, target: str, controls: Sequence[str]) -> Vector:
    """``target`` minus its least-squares projection on ``controls``."""
    if not controls:
        require_centered(data)
        return np.array(data.column(target))
    if target in controls:
        raise InputValidationError(f"'{target}' cannot be partialled out of itself")
    validate_design(data, target, controls)

    x = data.matrix(controls)
    check_nondegenerate(x, controls)
    return solve_least_squares(x, np.array(data.column(target)), controls).residuals


def _nondegenerate_residual(data: Dataset, target: str, controls: Sequence[str]) -> Vector:
    residual = residualize(data, target, controls)
    rtol = get_settings().numerics.degeneracy_rtol
    if np.linalg.norm(residual) <= rtol * np.linalg.norm(data.column(target)):
        raise DegenerateResidualError(target, list(controls))
    return residual


def _check_roles(data: Dataset, response: str, focus: str, controls: Sequence[str]) -> None:
    validate_design(data, response, [focus, *controls])


def prt_v1(data: Dataset, response: str, focus: str, controls: Sequence[str]) -> float:
    """Univariate regression of the raw response on the residualized focus."""
    _check_roles(data, response, focus, controls)
    delta = _nondegenerate_residual(data, focus, controls)
    return float(np.dot(data.column(response), delta) / np.dot(delta, delta))


def prt_v2(data: Dataset, response: str, focus: str, controls: Sequence[str]) -> float:
    """Univariate regression of the residualized response on the residualized focus."""
    _check_roles(data, response, focus, controls)
    delta = _nondegenerate_residual(data, focus, controls)
    response_residual = residualize(data, response, controls)
    return float(np.dot(response_residual, delta) / np.dot(delta, delta))


def _response_or_fail(data: Dataset, response: str) -> Vector:
    y = np.array(data.column(response))
    if not np.any(y):
        raise DegenerateResponseError(response)
    return y


def semi_partial_r2(data: Dataset, response: str, focus: str, controls: Sequence[str]) -> float:
    """Squared correlation of the raw response with the residualized focus."""
    _check_roles(data, response, focus, controls)
    delta = _nondegenerate_residual(data, focus, controls)
    return sample_correlation(_response_or_fail(data, response), delta) ** 2


def partial_correlation(data: Dataset, a: str, b: str, controls: Sequence[str]) -> float:
    """Signed correlation of ``a`` and ``b`` after both are residualized on ``controls``."""
    if a in controls or b in controls:
        raise InputValidationError("Correlated variables cannot also be controls")
    a_residual = _nondegenerate_residual(data, a, controls)
    b_residual = a_residual if a == b else _nondegenerate_residual(data, b, controls)
    return sample_correlation(a_residual, b_residual)


def partial_r2(data: Dataset, response: str, focus: str, controls: Sequence[str]) -> float:
    """Squared correlation of the residualized response with the residualized focus."""
    _check_roles(data, response, focus, controls)
    return partial_correlation(data, response, focus, controls) ** 2


def _decompose_one(
    data: Dataset,
    response: str,
    focus: str,
    controls: list[str],
    beta_multivariate: float,
) -> PartialDecomposition:
    y = _response_or_fail(data, response)
    x = data.column(focus)
    delta = _nondegenerate_residual(data, focus, controls)
    response_residual = residualize(data, response, controls)
    delta_ss = float(np.dot(delta, delta))
    correlation: float | None = None
    if np.linalg.norm(response_residual) > get_settings().numerics.degeneracy_rtol * np.linalg.norm(y):
        correlation = sample_correlation(response_residual, delta)
    else:
        logger.info("Controls of %s fit %s exactly; partial R2 is undefined", focus, response)
    n = data.n_rows

    return PartialDecomposition(
        focus=focus,
        controls=tuple(controls),
        delta=delta,
        beta_multivariate=beta_multivariate,
        beta_prt_v1=float(np.dot(y, delta)) / delta_ss,
        beta_prt_v2=float(np.dot(response_residual, delta)) / delta_ss,
        semi_partial_r2=sample_correlation(y, delta) ** 2,
        partial_r2=None if correlation is None else correlation**2,
        partial_correlation=correlation,
        focus_variance=float(np.dot(x, x)) / n,
        delta_variance=delta_ss / n,
    )


def verify_equivalence(
    record: PartialDecomposition, data: Dataset, response: str, tolerance: float | None = None
) -> None:
    """Raise EquivalenceError unless both theorem betas match the multivariate beta."""
    scale = coefficient_scale(data.column(response), data.column(record.focus))
    pairs = (
        ("v1", record.beta_prt_v1, "multivariate", record.beta_multivariate),
        ("v2", record.beta_prt_v2, "multivariate", record.beta_multivariate),
        ("v1", record.beta_prt_v1, "v2", record.beta_prt_v2),
    )
    for left_name, left, right_name, right in pairs:
        if not betas_agree(left, right, tolerance, scale):
            raise EquivalenceError(
                f"Partial regression betas disagree for '{record.focus}': "
                f"{left_name}={left!r} vs {right_name}={right!r}"
            )


def decompose(
    data: Dataset,
    response: str,
    regressors: Sequence[str],
    *,
    verify: bool = True,
    tolerance: float | None = None,
    max_workers: int | None = None,
) -> list[PartialDecomposition]:
    """One PartialDecomposition per regressor, in request order.

    When the controls of a regressor fit the response exactly, that record's
    ``partial_r2`` and ``partial_correlation`` are None (0/0); the betas are
    still reported and verified.
    """
    regressors = list(regressors)
    fit = fit_ols(data, response, regressors)
    if max_workers is None:
        max_workers = get_settings().decompose.max_workers
    logger.info("Decomposing %d regressor(s) of %s (workers=%d)", len(regressors), response, max_workers)

    def build(j: int) -> PartialDecomposition:
        controls = regressors[:j] + regressors[j + 1 :]
        return _decompose_one(data, response, regressors[j], controls, float(fit.beta[j]))

    if max_workers > 1 and len(regressors) > 1:
        with ThreadPoolExecutor(max_workers=max_workers) as pool:
            records = list(pool.map(build, range(len(regressors))))
    else:
        records = [build(j) for j in range(len(regressors))]

    if verify:
        for record in records:
            verify_equivalence(record, data, response, tolerance)
    for record in records:
        logger.debug("%r", record)
    return records


def control_sensitivity(
    data: Dataset, response: str, focus: str, controls: Sequence[str]
) -> dict[tuple[str, ...], float]:
    """beta_prt_v1 of ``focus`` for the full control set and for each control dropped in turn.

    Control sets whose residualized focus is degenerate are skipped.
    """
    controls = list(controls)
    candidate_sets = [tuple(controls)] + [tuple(c for c in controls if c != dropped) for dropped in controls]
    betas: dict[tuple[str, ...], float] = {}
    for control_set in candidate_sets:
        try:
            betas[control_set] = prt_v1(data, response, focus, list(control_set))
        except DegeneracyError as e:
            logger.debug("Skipping control set %s: %s", control_set, e)
    return betas
