from partialreg.regression.core_ols import center, fit_ols, normal_equations_oracle, r_squared_of
from partialreg.regression.partial import (
    decompose,
    partial_correlation,
    partial_r2,
    prt_v1,
    prt_v2,
    residualize,
    semi_partial_r2,
)
from partialreg.regression.pearson import (
    amplification_and_variance,
    attenuation_scenario,
    check_delta_identity,
    multivariate_beta1,
    multivariate_beta2,
)
from partialreg.regression.synthetic import bias_report, exact_moment_sample, generate

__all__ = [
    "amplification_and_variance",
    "attenuation_scenario",
    "bias_report",
    "center",
    "check_delta_identity",
    "decompose",
    "exact_moment_sample",
    "fit_ols",
    "generate",
    "multivariate_beta1",
    "multivariate_beta2",
    "normal_equations_oracle",
    "partial_correlation",
    "partial_r2",
    "prt_v1",
    "prt_v2",
    "r_squared_of",
    "residualize",
    "semi_partial_r2",
]
