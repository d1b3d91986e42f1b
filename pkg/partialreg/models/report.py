"""Serializable report models.

Field order is the JSON key order. Interpretation (``narrative``) comes
before the numbers it describes. Field names are a stable interface: new
fields may be added, existing ones are never renamed.
"""

from pydantic import BaseModel, Field

from partialreg.models.pearson import PearsonScenario


class FitSummary(BaseModel):
    r_squared: float = Field(ge=0.0, le=1.0, description="Share of response variance fitted")
    n: int = Field(ge=1, description="Observations")
    k: int = Field(ge=1, description="Regressors")
    condition_estimate: float = Field(description="2-norm condition estimate of the design")
    response_mean: float = Field(description="Mean subtracted from the response at centering")
    implied_intercept: float = Field(description="Intercept of the equivalent uncentered fit")


class CoefficientRow(BaseModel):
    name: str
    beta: float
    mean: float = Field(description="Mean subtracted from the regressor at centering")


class FitReport(BaseModel):
    response: str
    narrative: list[str]
    coefficients: list[CoefficientRow]
    fit_summary: FitSummary


class LedgerRow(BaseModel):
    """One regressor's partial regression record."""

    focus: str
    controls: list[str]
    beta_multivariate: float
    beta_prt_v1: float
    beta_prt_v2: float
    semi_partial_r2: float
    partial_r2: float | None = Field(description="None when the controls fit the response exactly")
    partial_correlation: float | None
    focus_variance: float
    delta_variance: float
    focus_mean: float = Field(description="Mean subtracted from the focus at centering")
    delta: list[float] = Field(description="Focus with the controls partialled out")


class LedgerReport(BaseModel):
    """Decomposition ledger: every beta read as a univariate regression."""

    response: str
    narrative: list[str]
    rows: list[LedgerRow]
    fit_summary: FitSummary
    tolerance: float = Field(description="Relative tolerance the betas were checked against")


class DeltaIdentityReport(BaseModel):
    """Whether a two-regressor fit collapses onto one coefficient on the residualized X1."""

    holds: bool
    tolerance: float
    relative_gap: float = Field(description="||fitted - beta1 * delta|| / ||fitted||")
    beta1: float
    beta2: float
    sample_beta_x1_x2: float
    sample_beta_y_x2: float
    message: str


class AmplificationReport(BaseModel):
    """Population algebra of the case beta_y_x2 = 0."""

    simple_beta: float
    amplified_beta: float
    amplification_factor: float
    var_x1: float
    delta_variance: float
    fitted_variance: float = Field(description="V(beta1 * delta), the full-fit explained variance")
    simple_fitted_variance: float = Field(description="beta_y_x1^2 V(X1), the simple-fit explained variance")
    variance_ratio: float
    cov_y_x1: float
    cov_y_delta: float
    beta_amplified: bool
    variance_amplified: bool
    covariance_preserved: bool


class ClosedFormCheck(BaseModel):
    name: str
    closed_form: float
    fitted: float
    agrees: bool


class PearsonDemoReport(BaseModel):
    narrative: list[str]
    scenario: PearsonScenario
    beta1: float
    beta2: float
    checks: list[ClosedFormCheck]
    delta_identity: DeltaIdentityReport | None = None
    amplification: AmplificationReport | None = None
    ledger: LedgerReport | None = None


class BiasReport(BaseModel):
    """Best-fit coefficients set against the structural ones."""

    regressors: list[str]
    gamma_hat: list[float] = Field(description="Fitted best-fit coefficients")
    beta_structural: list[float]
    gamma_population: list[float] = Field(description="beta + inv(Sigma_xx) cov(X, eps)")
    gap_to_structural: list[float]
    gap_to_population: list[float]
    monte_carlo_se: list[float] = Field(description="Sampling spread of gamma_hat around gamma_population")
    r_squared: float
    n: int


class ConvergencePoint(BaseModel):
    n: int
    mean_abs_error: float


class ConvergenceStudy(BaseModel):
    seeds: int
    points: list[ConvergencePoint]
    slope: float = Field(description="Least-squares slope of log error on log n")


class SimulationReport(BaseModel):
    label: str | None
    narrative: list[str]
    bias: BiasReport
    convergence: ConvergenceStudy | None = None
