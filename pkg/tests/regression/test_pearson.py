import math

import numpy as np
import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st
from pydantic import ValidationError

from partialreg.errors import DegenerateCorrelationError, ScenarioInputError
from partialreg.models.dataset import Dataset
from partialreg.models.pearson import PearsonScenario
from partialreg.regression.core_ols import center, fit_ols, r_squared_of
from partialreg.regression.partial import decompose
from partialreg.regression.pearson import (
    amplification_and_variance,
    attenuation_scenario,
    check_delta_identity,
    multivariate_beta1,
    multivariate_beta2,
    population_covariance,
    scenario_from_sample,
    scenario_sample,
)
from partialreg.regression.synthetic import sample_covariance

RHO_SQ_GRID = [i / 10 for i in range(10)]


class TestScenario:
    def test_rho_sq_is_product_of_slopes(self):
        s = PearsonScenario(beta_y_x1=0.5, beta_x2_x1=0.3, beta_x1_x2=1.2)
        assert s.rho_sq == pytest.approx(0.36, abs=1e-12)
        assert s.rho == pytest.approx(0.6)

    def test_mismatched_signs_rejected(self):
        with pytest.raises(ValidationError, match="share a sign"):
            PearsonScenario(beta_y_x1=0.5, beta_x2_x1=0.3, beta_x1_x2=-0.3)

    def test_one_zero_slope_rejected(self):
        with pytest.raises(ValidationError):
            PearsonScenario(beta_y_x1=0.5, beta_x2_x1=0.0, beta_x1_x2=0.3)

    def test_perfect_correlation_is_degenerate(self):
        with pytest.raises(DegenerateCorrelationError):
            PearsonScenario.from_correlation(0.5, 1.0)

    def test_negative_correlation(self):
        s = PearsonScenario.from_correlation(0.5, -0.6)
        assert s.rho == pytest.approx(-0.6)
        assert s.rho_sq == pytest.approx(0.36)


class TestClosedForms:
    def test_non_assortative_keeps_simple_betas(self):
        s = PearsonScenario(beta_y_x1=0.7, beta_y_x2=-0.2, beta_x2_x1=0.0, beta_x1_x2=0.0)
        assert multivariate_beta1(s) == 0.7
        assert multivariate_beta2(s) == -0.2

    def test_no_response_correlation(self):
        s = PearsonScenario(beta_y_x1=0.0, beta_y_x2=0.0, beta_x2_x1=0.4, beta_x1_x2=0.5)
        assert multivariate_beta1(s) == 0.0
        assert multivariate_beta2(s) == 0.0

    def test_attenuation_example(self):
        beta1, beta2 = attenuation_scenario(0.5, 0.6, 0.6)
        assert beta1 == pytest.approx(0.78125, abs=1e-12)
        assert beta2 == pytest.approx(-0.46875, abs=1e-12)

    def test_attenuation_without_assortation(self):
        assert attenuation_scenario(0.5, 0.0, 0.0) == (0.5, 0.0)

    @settings(max_examples=200, deadline=None)
    @given(
        beta_y_x1=st.floats(0.01, 10.0),
        beta_x1_x2=st.floats(0.01, 10.0),
        beta_x2_x1=st.floats(0.01, 10.0),
    )
    def test_attenuation_sign_law(self, beta_y_x1, beta_x1_x2, beta_x2_x1):
        assume(beta_x1_x2 * beta_x2_x1 < 0.99)
        beta1, beta2 = attenuation_scenario(beta_y_x1, beta_x1_x2, beta_x2_x1)
        assert beta2 < 0.0
        assert beta1 > beta_y_x1


class TestExactMomentAgreement:
    @pytest.mark.parametrize("rho_sq", RHO_SQ_GRID)
    @pytest.mark.parametrize("beta_y_x2", [0.0, 0.25])
    def test_closed_forms_match_fit(self, rho_sq, beta_y_x2):
        s = PearsonScenario.from_correlation(0.5, math.sqrt(rho_sq), beta_y_x2)
        sample = scenario_sample(s, 200, seed=17)
        fit = fit_ols(sample, "y", ["x1", "x2"])
        assert fit.beta[0] == pytest.approx(multivariate_beta1(s), rel=1e-10, abs=1e-12)
        assert fit.beta[1] == pytest.approx(multivariate_beta2(s), rel=1e-10, abs=1e-12)

    def test_unequal_regressor_variances(self):
        s = PearsonScenario(beta_y_x1=0.8, beta_y_x2=0.1, beta_x2_x1=0.9, beta_x1_x2=0.3)
        sample = scenario_sample(s, 150, seed=3, var_x1=2.5)
        fit = fit_ols(sample, "y", ["x1", "x2"])
        assert fit.beta[0] == pytest.approx(multivariate_beta1(s), rel=1e-10)
        assert fit.beta[1] == pytest.approx(multivariate_beta2(s), rel=1e-10)

    def test_sample_reproduces_scenario_slopes(self):
        s = PearsonScenario(beta_y_x1=0.5, beta_y_x2=0.2, beta_x2_x1=0.3, beta_x1_x2=0.6)
        measured = scenario_from_sample(scenario_sample(s, 100, seed=1))
        for field in ("beta_y_x1", "beta_y_x2", "beta_x2_x1", "beta_x1_x2"):
            assert getattr(measured, field) == pytest.approx(getattr(s, field), rel=1e-10)

    def test_population_covariance_is_realized(self):
        s = PearsonScenario.from_correlation(0.5, 0.6)
        target = population_covariance(s)
        np.testing.assert_allclose(sample_covariance(scenario_sample(s, 50, seed=2)), target, atol=1e-12)
        assert target[1, 2] == 0.0

    def test_attenuation_matches_decompose(self):
        s = PearsonScenario.from_correlation(0.5, 0.6)
        records = decompose(scenario_sample(s, 120, seed=4), "y", ["x1", "x2"])
        assert records[0].beta_prt_v1 == pytest.approx(0.78125, rel=1e-10)
        assert records[1].beta_prt_v1 == pytest.approx(-0.46875, rel=1e-10)


class TestDeltaIdentity:
    @pytest.mark.parametrize("rho_sq", RHO_SQ_GRID)
    def test_holds_on_exact_sample(self, rho_sq):
        s = PearsonScenario.from_correlation(0.5, math.sqrt(rho_sq))
        report = check_delta_identity(s, scenario_sample(s, 200, seed=9), tolerance=1e-10)
        assert report.holds
        assert report.relative_gap <= 1e-10
        assert report.beta1 == pytest.approx(0.5 / (1.0 - rho_sq), rel=1e-10)

    def test_non_assortative_sample(self):
        s = PearsonScenario.from_correlation(0.8, 0.0)
        sample = scenario_sample(s, 80, seed=5)
        report = check_delta_identity(s, sample, tolerance=1e-10)
        assert report.holds
        assert report.sample_beta_x1_x2 == pytest.approx(0.0, abs=1e-12)
        assert report.beta1 == pytest.approx(0.8, rel=1e-10)

    def test_monte_carlo_sample_within_root_n(self):
        s = PearsonScenario.from_correlation(0.5, 0.6)
        n = 10_000
        root = np.linalg.cholesky(population_covariance(s))
        draws = np.random.default_rng(77).standard_normal((n, 3)) @ root.T
        sample = center(Dataset(column_names=("x1", "x2", "y"), values=draws))

        assert check_delta_identity(s, sample, tolerance=10.0 / math.sqrt(n)).holds
        strict = check_delta_identity(s, sample, tolerance=1e-10)
        assert not strict.holds
        assert "Mismatch" in strict.message
        assert "requires 0" in strict.message

    def test_requires_zero_y_x2(self):
        s = PearsonScenario.from_correlation(0.5, 0.6, beta_y_x2=0.1)
        with pytest.raises(ScenarioInputError):
            check_delta_identity(s, scenario_sample(s, 50, seed=0))


class TestAmplification:
    def test_example_values(self):
        report = amplification_and_variance(PearsonScenario.from_correlation(0.5, 0.6))
        assert report.amplified_beta == pytest.approx(0.78125, abs=1e-12)
        assert report.amplification_factor == pytest.approx(1.5625, abs=1e-12)
        assert report.variance_ratio == pytest.approx(1.5625, abs=1e-12)
        assert report.delta_variance == pytest.approx(0.64, abs=1e-12)
        assert report.beta_amplified
        assert report.variance_amplified
        assert report.covariance_preserved

    def test_no_correlation_gives_equality(self):
        report = amplification_and_variance(PearsonScenario.from_correlation(0.5, 0.0))
        assert report.amplified_beta == report.simple_beta
        assert report.fitted_variance == report.simple_fitted_variance
        assert report.variance_ratio == 1.0
        assert report.cov_y_delta == report.cov_y_x1

    @pytest.mark.parametrize("rho_sq", RHO_SQ_GRID[1:])
    def test_variance_identity_on_exact_sample(self, rho_sq):
        s = PearsonScenario.from_correlation(0.5, math.sqrt(rho_sq))
        report = amplification_and_variance(s)
        sample = scenario_sample(s, 200, seed=21)
        record = decompose(sample, "y", ["x1", "x2"])[0]
        n = sample.n_rows

        assert record.beta_multivariate**2 * record.delta_variance == pytest.approx(report.fitted_variance, rel=1e-10)
        cov_y_delta = float(np.dot(sample.column("y"), record.delta)) / n
        cov_y_x1 = float(np.dot(sample.column("y"), sample.column("x1"))) / n
        assert cov_y_delta == pytest.approx(cov_y_x1, rel=1e-10)

    @pytest.mark.parametrize("rho_sq", RHO_SQ_GRID)
    def test_joint_fit_explains_at_least_as_much(self, rho_sq):
        s = PearsonScenario.from_correlation(0.5, math.sqrt(rho_sq))
        sample = scenario_sample(s, 200, seed=22)
        joint = fit_ols(sample, "y", ["x1", "x2"])
        simple = fit_ols(sample, "y", ["x1"])
        assert r_squared_of(joint, sample.column("y")) >= r_squared_of(simple, sample.column("y")) - 1e-12

    def test_requires_zero_y_x2(self):
        with pytest.raises(ScenarioInputError):
            amplification_and_variance(PearsonScenario.from_correlation(0.5, 0.6, beta_y_x2=0.3))
