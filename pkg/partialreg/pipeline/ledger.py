"""Report assembly and narrative.

Narrative strings come first in every report and embed the numbers they
describe. Coefficients are read first as "allowed for" (the controls are
partialled out of the regressor); "kept constant" is only used together
with that residualization qualifier.
"""

import logging
from collections.abc import Sequence

import numpy as np

from partialreg.models.dataset import Dataset
from partialreg.models.decomposition import PartialDecomposition
from partialreg.models.fit import RegressionFit
from partialreg.models.pearson import PearsonScenario
from partialreg.models.report import (
    AmplificationReport,
    BiasReport,
    ClosedFormCheck,
    CoefficientRow,
    ConvergenceStudy,
    DeltaIdentityReport,
    FitReport,
    FitSummary,
    LedgerReport,
    LedgerRow,
    PearsonDemoReport,
    SimulationReport,
)
from partialreg.models.simulation import SimulationSpec

logger = logging.getLogger(__name__)


def _join(names: Sequence[str]) -> str:
    return ", ".join(names)


def build_fit_summary(fit: RegressionFit) -> FitSummary:
    return FitSummary(
        r_squared=fit.r_squared,
        n=fit.n_obs,
        k=len(fit.regressor_names),
        condition_estimate=fit.condition_estimate,
        response_mean=fit.response_mean,
        implied_intercept=fit.implied_intercept,
    )


def _summary_sentence(fit: RegressionFit) -> str:
    return (
        f"R2 = {fit.r_squared:.6g} over n = {fit.n_obs} observations and k = {len(fit.regressor_names)} "
        f"regressor(s); data were centered, so the implied intercept is {fit.implied_intercept:.6g} "
        f"(mean of {fit.response_name} = {fit.response_mean:.6g})."
    )


def build_fit_report(fit: RegressionFit) -> FitReport:
    narrative = [_summary_sentence(fit)]
    for j, name in enumerate(fit.regressor_names):
        others = [other for other in fit.regressor_names if other != name]
        beta = float(fit.beta[j])
        if others:
            narrative.append(
                f"{name}: beta = {beta:.6g}, the best-fit coefficient with {_join(others)} allowed for; "
                f"run decompose to read it as a univariate regression."
            )
        else:
            narrative.append(f"{name}: beta = {beta:.6g}, the simple regression slope of {fit.response_name}.")
    coefficients = [
        CoefficientRow(name=name, beta=float(beta), mean=mean)
        for name, beta, mean in zip(fit.regressor_names, fit.beta, fit.regressor_means, strict=True)
    ]
    return FitReport(
        response=fit.response_name,
        narrative=narrative,
        coefficients=coefficients,
        fit_summary=build_fit_summary(fit),
    )


def describe_record(record: PartialDecomposition, response: str) -> list[str]:
    """Interpretation of one regressor's coefficient."""
    focus = record.focus
    beta = record.beta_multivariate
    if not record.controls:
        return [
            f"{focus}: beta = {beta:.6g} with no other regressor to allow for; delta is {focus} itself and "
            f"both univariate regressions give the simple slope (v1 = {record.beta_prt_v1:.6g}, "
            f"v2 = {record.beta_prt_v2:.6g}); partial R2 = semi-partial R2 = {record.semi_partial_r2:.6g}."
        ]
    controls = _join(record.controls)
    if record.partial_r2 is None or record.partial_correlation is None:
        strength = (
            f"{focus}: partial R2 and partial correlation are undefined because {controls} fit {response} "
            f"exactly; semi-partial R2 = {record.semi_partial_r2:.6g}."
        )
    else:
        strength = (
            f"{focus}: partial R2 = {record.partial_r2:.6g} >= semi-partial R2 = {record.semi_partial_r2:.6g}; "
            f"partial correlation = {record.partial_correlation:.6g}."
        )
    return [
        f"{focus}: beta = {beta:.6g} with {controls} allowed for. It is the slope of {response} on delta, "
        f"{focus} adjusted for {controls}, not on the raw {focus} column "
        f"(v1 = {record.beta_prt_v1:.6g}, v2 = {record.beta_prt_v2:.6g}).",
        f"{controls} are 'kept constant' only in that they were residualized out of {focus}: delta keeps "
        f"{record.variance_retained:.6g} of its variance (V(delta) = {record.delta_variance:.6g}, "
        f"V({focus}) = {record.focus_variance:.6g}); a different control set gives a different delta "
        f"and in general a different beta.",
        strength,
    ]


def _ledger_row(record: PartialDecomposition, data: Dataset) -> LedgerRow:
    return LedgerRow(
        focus=record.focus,
        controls=list(record.controls),
        beta_multivariate=record.beta_multivariate,
        beta_prt_v1=record.beta_prt_v1,
        beta_prt_v2=record.beta_prt_v2,
        semi_partial_r2=record.semi_partial_r2,
        partial_r2=record.partial_r2,
        partial_correlation=record.partial_correlation,
        focus_variance=record.focus_variance,
        delta_variance=record.delta_variance,
        focus_mean=data.mean_of(record.focus),
        delta=[float(v) for v in record.delta],
    )


def build_ledger(
    fit: RegressionFit,
    records: Sequence[PartialDecomposition],
    data: Dataset,
    tolerance: float,
) -> LedgerReport:
    """Decomposition ledger: one row per regressor in request order."""
    response = fit.response_name
    narrative = [
        f"Each of the {len(records)} coefficient(s) of {response} is read as a univariate regression on its "
        f"residualized regressor; all agree with the joint fit within relative tolerance {tolerance:.1e}.",
    ]
    for record in records:
        narrative.extend(describe_record(record, response))
    narrative.append(_summary_sentence(fit))
    logger.debug("Ledger for %s: %d row(s), %d narrative line(s)", response, len(records), len(narrative))
    return LedgerReport(
        response=response,
        narrative=narrative,
        rows=[_ledger_row(record, data) for record in records],
        fit_summary=build_fit_summary(fit),
        tolerance=tolerance,
    )


def pearson_narrative(
    s: PearsonScenario,
    beta1: float,
    beta2: float,
    delta_identity: DeltaIdentityReport | None,
    amplification: AmplificationReport | None,
) -> list[str]:
    narrative: list[str] = []
    if s.is_non_assortative:
        narrative.append(
            f"rho^2 = 0: the regressors are non-assortative, so the joint betas equal the simple betas "
            f"(beta1 = {beta1:.6g} = beta_y_x1 = {s.beta_y_x1:.6g}, beta2 = {beta2:.6g} = beta_y_x2 = "
            f"{s.beta_y_x2:.6g})."
        )
    else:
        narrative.append(
            f"rho^2 = {s.rho_sq:.6g}: from the simple slopes (beta_y_x1 = {s.beta_y_x1:.6g}, beta_y_x2 = "
            f"{s.beta_y_x2:.6g}, beta_x2_x1 = {s.beta_x2_x1:.6g}, beta_x1_x2 = {s.beta_x1_x2:.6g}) the joint "
            f"betas are beta1 = {beta1:.6g} and beta2 = {beta2:.6g}."
        )
    if amplification is not None and not s.is_non_assortative:
        narrative.append(
            f"beta_y_x2 = 0: x2 alone does not predict y, yet its joint coefficient is {beta2:.6g}. The x1 "
            f"coefficient grows from {amplification.simple_beta:.6g} to {amplification.amplified_beta:.6g} "
            f"(factor {amplification.amplification_factor:.6g}) while delta keeps V(delta) = "
            f"{amplification.delta_variance:.6g} of V(x1) = {amplification.var_x1:.6g}: a bigger multiple of a "
            f"smaller quantity, with cov(y, delta) = cov(y, x1) = {amplification.cov_y_x1:.6g}."
        )
        narrative.append(
            f"Explained variance rises from {amplification.simple_fitted_variance:.6g} to "
            f"{amplification.fitted_variance:.6g} (ratio {amplification.variance_ratio:.6g}): the argument for "
            f"coefficients does not carry over to explained variance."
        )
    if delta_identity is not None:
        narrative.append(delta_identity.message)
    if s.beta_y_x2 != 0.0:
        narrative.append(
            f"beta_y_x2 = {s.beta_y_x2:.6g} is nonzero: there is no single-coefficient reading; the ledger "
            f"below reads each beta as a univariate regression on its residualized regressor."
        )
    return narrative


def build_pearson_demo(
    s: PearsonScenario,
    beta1: float,
    beta2: float,
    checks: list[ClosedFormCheck],
    ledger: LedgerReport,
    delta_identity: DeltaIdentityReport | None = None,
    amplification: AmplificationReport | None = None,
) -> PearsonDemoReport:
    return PearsonDemoReport(
        narrative=pearson_narrative(s, beta1, beta2, delta_identity, amplification),
        scenario=s,
        beta1=beta1,
        beta2=beta2,
        checks=checks,
        delta_identity=delta_identity,
        amplification=amplification,
        ledger=ledger,
    )


def simulation_narrative(spec: SimulationSpec, bias: BiasReport, convergence: ConvergenceStudy | None) -> list[str]:
    narrative: list[str] = []
    if spec.label:
        narrative.append(f"{spec.label} (n = {spec.n}, seed = {spec.seed}).")
    endogenous = bool(np.any(np.asarray(spec.sigma_x_eps) != 0.0))
    if endogenous:
        narrative.append(
            "cov(X, eps) is nonzero: the fit converges to the best-fit gamma = beta + inv(Sigma_xx) cov(X, eps), "
            "not to the structural beta."
        )
    else:
        narrative.append(
            "cov(X, eps) = 0: gamma = beta, so the best fit also recovers the structural coefficients "
            "(under the Gauss-Markov conditions, as the best linear unbiased estimate)."
        )
    for j, name in enumerate(bias.regressors):
        narrative.append(
            f"{name}: fitted gamma = {bias.gamma_hat[j]:.6g}, population gamma = {bias.gamma_population[j]:.6g}, "
            f"structural beta = {bias.beta_structural[j]:.6g} (gap to gamma {bias.gap_to_population[j]:.3g}, "
            f"Monte-Carlo SE {bias.monte_carlo_se[j]:.3g})."
        )
    narrative.append(
        f"R2 = {bias.r_squared:.6g}: best-fit quality is a property of gamma and is unaffected by whether the "
        f"fit also estimates beta."
    )
    if convergence is not None:
        sizes = ", ".join(str(point.n) for point in convergence.points)
        narrative.append(
            f"Mean |gamma_hat - gamma| falls with log-log slope {convergence.slope:.3g} over n = {sizes} "
            f"({convergence.seeds} seeds per size); root-n consistency predicts -0.5."
        )
    return narrative


def build_simulation_report(
    spec: SimulationSpec, bias: BiasReport, convergence: ConvergenceStudy | None = None
) -> SimulationReport:
    return SimulationReport(
        label=spec.label,
        narrative=simulation_narrative(spec, bias, convergence),
        bias=bias,
        convergence=convergence,
    )
