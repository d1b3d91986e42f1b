import numpy as np
import pytest

from partialreg.errors import (
    DegeneracyError,
    DegenerateResidualError,
    DegenerateResponseError,
    EquivalenceError,
    InputValidationError,
    RankDeficiencyError,
)
from partialreg.models.decomposition import PartialDecomposition
from partialreg.regression.core_ols import fit_ols, sample_correlation, simple_beta
from partialreg.regression.partial import (
    control_sensitivity,
    decompose,
    partial_correlation,
    partial_r2,
    prt_v1,
    prt_v2,
    residualize,
    semi_partial_r2,
    verify_equivalence,
)
from partialreg.regression.synthetic import exact_moment_sample

from ..conftest import centered, column_scale, random_dataset


@pytest.fixture
def correlated():
    """Centered 300 x 3 design with correlated regressors."""
    rng = np.random.default_rng(20)
    z = rng.standard_normal((300, 3))
    x = z @ np.array([[1.0, 0.6, 0.3], [0.0, 0.8, 0.4], [0.0, 0.0, 0.7]])
    y = x @ np.array([1.5, -0.7, 0.4]) + rng.standard_normal(300)
    return centered(x1=x[:, 0], x2=x[:, 1], x3=x[:, 2], y=y)


@pytest.fixture
def orthogonal():
    """Centered 60 x 3 design with exactly orthogonal unit-variance regressors, and its noise column."""
    basis = exact_moment_sample(np.eye(4), 60, seed=5, names=["x1", "x2", "x3", "e"])
    return {name: np.array(basis.column(name)) for name in basis.column_names}


def _with_response(columns, coefficients, noise=0.0):
    y = sum(b * columns[name] for name, b in coefficients.items()) + noise * columns["e"]
    return centered(x1=columns["x1"], x2=columns["x2"], x3=columns["x3"], y=y)


class TestResidualize:
    def test_no_controls_returns_target(self, correlated):
        np.testing.assert_array_equal(residualize(correlated, "x1", []), correlated.column("x1"))

    def test_orthogonal_to_controls(self, correlated):
        delta = residualize(correlated, "x1", ["x2", "x3"])
        for control in ("x2", "x3"):
            bound = 1e-8 * correlated.n_rows * column_scale(correlated, "x1", control)
            assert abs(np.dot(delta, correlated.column(control))) <= bound

    def test_target_orthogonal_to_control_is_unchanged(self):
        data = centered(a=[1.0, -1.0, 1.0, -1.0], b=[1.0, 1.0, -1.0, -1.0], y=[0.0, 1.0, 0.0, 2.0])
        np.testing.assert_allclose(residualize(data, "a", ["b"]), data.column("a"), atol=1e-12)

    def test_target_equal_to_control_leaves_nothing(self):
        data = centered(a=[1.0, 3.0, 2.0, 6.0], b=[1.0, 3.0, 2.0, 6.0], y=[0.0, 1.0, 0.0, 2.0])
        np.testing.assert_allclose(residualize(data, "a", ["b"]), 0.0, atol=1e-12)

    def test_target_among_controls_rejected(self, correlated):
        with pytest.raises(InputValidationError):
            residualize(correlated, "x1", ["x1", "x2"])


class TestTheoremVersions:
    def test_both_versions_equal_multivariate_beta(self, correlated):
        fit = fit_ols(correlated, "y", ["x1", "x2", "x3"])
        for j, focus in enumerate(["x1", "x2", "x3"]):
            controls = [c for c in ["x1", "x2", "x3"] if c != focus]
            assert prt_v1(correlated, "y", focus, controls) == pytest.approx(fit.beta[j], rel=1e-10)
            assert prt_v2(correlated, "y", focus, controls) == pytest.approx(fit.beta[j], rel=1e-10)

    @pytest.mark.parametrize("controls", [[], ["x2"], ["x3"], ["x2", "x3"]])
    def test_orthogonal_design_gives_simple_beta(self, orthogonal, controls):
        data = _with_response(orthogonal, {"x1": 1.5, "x2": -0.7, "x3": 0.4}, noise=0.5)
        simple = simple_beta(data.column("x1"), data.column("y"))
        assert prt_v1(data, "y", "x1", controls) == pytest.approx(simple, rel=1e-10)
        assert prt_v2(data, "y", "x1", controls) == pytest.approx(simple, rel=1e-10)

    def test_collinear_focus_is_degenerate(self):
        data = centered(a=[1.0, 3.0, 2.0, 6.0], b=[2.0, 6.0, 4.0, 12.0], y=[0.0, 1.0, 0.0, 2.0])
        with pytest.raises(DegenerateResidualError) as exc_info:
            prt_v1(data, "y", "a", ["b"])
        assert exc_info.value.target == "a"
        assert exc_info.value.controls == ["b"]


class TestCorrelations:
    def test_partial_r2_at_least_semi_partial(self, correlated):
        semi = semi_partial_r2(correlated, "y", "x2", ["x1", "x3"])
        partial = partial_r2(correlated, "y", "x2", ["x1", "x3"])
        assert 0.0 <= semi <= partial <= 1.0

    def test_ratio_identity(self, correlated):
        controls = ["x1", "x3"]
        semi = semi_partial_r2(correlated, "y", "x2", controls)
        r2_controls = fit_ols(correlated, "y", controls).r_squared
        assert partial_r2(correlated, "y", "x2", controls) == pytest.approx(semi / (1.0 - r2_controls), rel=1e-10)

    def test_semi_partial_is_r2_increment(self, correlated):
        full = fit_ols(correlated, "y", ["x1", "x2", "x3"]).r_squared
        reduced = fit_ols(correlated, "y", ["x1", "x3"]).r_squared
        assert semi_partial_r2(correlated, "y", "x2", ["x1", "x3"]) == pytest.approx(full - reduced, rel=1e-10)

    def test_partial_correlation_squares_to_partial_r2(self, correlated):
        rho = partial_correlation(correlated, "y", "x1", ["x2", "x3"])
        assert rho**2 == pytest.approx(partial_r2(correlated, "y", "x1", ["x2", "x3"]), abs=1e-10)

    def test_partial_correlation_is_symmetric(self, correlated):
        assert partial_correlation(correlated, "x1", "y", ["x2"]) == partial_correlation(
            correlated, "y", "x1", ["x2"]
        )

    def test_variable_with_itself(self, correlated):
        assert partial_correlation(correlated, "x1", "x1", ["x2"]) == pytest.approx(1.0)

    def test_semi_partial_zero_when_response_orthogonal_to_delta(self, orthogonal):
        data = _with_response(orthogonal, {"x1": 1.5, "x3": 0.8})
        assert semi_partial_r2(data, "y", "x2", ["x1"]) == pytest.approx(0.0, abs=1e-20)

    def test_partial_zero_when_focus_orthogonal_to_response_and_controls(self, orthogonal):
        data = _with_response(orthogonal, {"x1": 1.5, "x2": 0.8})
        assert partial_r2(data, "y", "x3", ["x1"]) == pytest.approx(0.0, abs=1e-20)

    def test_partial_equals_semi_partial_when_controls_miss_response(self, orthogonal):
        data = _with_response(orthogonal, {"x2": 0.8, "x3": 0.5})
        semi = semi_partial_r2(data, "y", "x2", ["x1"])
        assert semi > 0.1
        assert partial_r2(data, "y", "x2", ["x1"]) == pytest.approx(semi, rel=1e-12)

    def test_partial_correlation_without_controls_is_plain_correlation(self, correlated):
        plain = sample_correlation(correlated.column("y"), correlated.column("x1"))
        assert partial_correlation(correlated, "y", "x1", []) == pytest.approx(plain, rel=1e-15)

    def test_controls_explaining_response_is_degenerate(self):
        data = centered(x1=[1.0, 2.0, 4.0, 7.0], x2=[0.5, -1.0, 2.0, 1.0], y=[2.0, 4.0, 8.0, 14.0])
        with pytest.raises(DegenerateResidualError):
            partial_r2(data, "y", "x2", ["x1"])

    def test_constant_response_is_degenerate(self):
        data = centered(x1=[1.0, 2.0, 4.0, 7.0], x2=[0.5, -1.0, 2.0, 1.0], y=[3.0, 3.0, 3.0, 3.0])
        with pytest.raises(DegenerateResponseError):
            semi_partial_r2(data, "y", "x2", ["x1"])


class TestDecompose:
    def test_single_regressor(self):
        data, names = random_dataset(np.random.default_rng(8), 40, 1)
        (record,) = decompose(data, "y", names)
        fit = fit_ols(data, "y", names)
        assert record.controls == ()
        assert record.beta_prt_v1 == pytest.approx(record.beta_multivariate, rel=1e-12)
        assert record.beta_prt_v2 == pytest.approx(record.beta_multivariate, rel=1e-12)
        assert record.partial_r2 == pytest.approx(fit.r_squared, rel=1e-12)
        assert record.semi_partial_r2 == pytest.approx(fit.r_squared, rel=1e-12)

    def test_records_follow_request_order(self, correlated):
        records = decompose(correlated, "y", ["x3", "x1", "x2"])
        assert [r.focus for r in records] == ["x3", "x1", "x2"]
        assert records[0].controls == ("x1", "x2")

    def test_variance_shrinks_under_partialling(self, correlated):
        for record in decompose(correlated, "y", ["x1", "x2", "x3"]):
            assert record.delta_variance <= record.focus_variance
            assert 0.0 < record.variance_retained <= 1.0

    def test_sign_of_partial_correlation_matches_beta(self, correlated):
        for record in decompose(correlated, "y", ["x1", "x2", "x3"]):
            assert np.sign(record.partial_correlation) == np.sign(record.beta_multivariate)

    def test_parallel_is_bit_identical_to_sequential(self):
        data, names = random_dataset(np.random.default_rng(31), 250, 6, scale_decades=1.0)
        sequential = decompose(data, "y", names, max_workers=1)
        parallel = decompose(data, "y", names, max_workers=4)
        for a, b in zip(sequential, parallel, strict=True):
            assert a.focus == b.focus
            np.testing.assert_array_equal(a.delta, b.delta)
            assert (a.beta_prt_v1, a.beta_prt_v2, a.partial_r2, a.semi_partial_r2) == (
                b.beta_prt_v1,
                b.beta_prt_v2,
                b.partial_r2,
                b.semi_partial_r2,
            )

    def test_workers_from_environment(self, monkeypatch):
        monkeypatch.setenv("PARTIALREG_DECOMPOSE_MAX_WORKERS", "3")
        data, names = random_dataset(np.random.default_rng(32), 60, 3)
        assert [r.focus for r in decompose(data, "y", names)] == names

    def test_orthogonal_design_records_equal_simple_betas(self, orthogonal):
        data = _with_response(orthogonal, {"x1": 1.5, "x2": -0.7, "x3": 0.4}, noise=0.5)
        for record in decompose(data, "y", ["x1", "x2", "x3"]):
            simple = simple_beta(data.column(record.focus), data.column("y"))
            assert record.beta_multivariate == pytest.approx(simple, rel=1e-10)
            assert record.beta_prt_v1 == pytest.approx(simple, rel=1e-10)
            assert record.beta_prt_v2 == pytest.approx(simple, rel=1e-10)
            assert record.variance_retained == pytest.approx(1.0, rel=1e-10)

    def test_controls_fitting_response_leave_partial_r2_undefined(self):
        data = centered(x1=[1.0, 2.0, 4.0, 7.0], x2=[0.5, -1.0, 2.0, 1.0], y=[2.0, 4.0, 8.0, 14.0])
        first, second = decompose(data, "y", ["x1", "x2"])
        assert first.beta_multivariate == pytest.approx(2.0, rel=1e-12)
        assert first.partial_r2 == pytest.approx(1.0, rel=1e-12)
        assert second.beta_multivariate == pytest.approx(0.0, abs=1e-12)
        assert second.partial_r2 is None
        assert second.partial_correlation is None
        assert second.semi_partial_r2 == pytest.approx(0.0, abs=1e-20)

    def test_rank_deficient_design(self):
        rng = np.random.default_rng(9)
        x1 = rng.normal(size=20)
        data = centered(x1=x1, x2=2.0 * x1, y=rng.normal(size=20))
        with pytest.raises(RankDeficiencyError):
            decompose(data, "y", ["x1", "x2"])


def test_verify_equivalence_rejects_disagreement(correlated):
    record = PartialDecomposition(
        focus="x1",
        controls=("x2",),
        delta=correlated.column("x1"),
        beta_multivariate=1.0,
        beta_prt_v1=1.0,
        beta_prt_v2=1.1,
        semi_partial_r2=0.1,
        partial_r2=0.2,
        partial_correlation=0.45,
        focus_variance=1.0,
        delta_variance=0.5,
    )
    with pytest.raises(EquivalenceError, match="v2="):
        verify_equivalence(record, correlated, "y", tolerance=1e-8)


def test_control_sensitivity_changes_with_control_set(correlated):
    betas = control_sensitivity(correlated, "y", "x1", ["x2", "x3"])
    assert set(betas) == {("x2", "x3"), ("x3",), ("x2",)}
    full = fit_ols(correlated, "y", ["x1", "x2", "x3"]).beta[0]
    assert betas[("x2", "x3")] == pytest.approx(full, rel=1e-10)
    assert betas[("x3",)] != pytest.approx(full, rel=1e-3)


def test_control_sensitivity_skips_degenerate_sets():
    rng = np.random.default_rng(12)
    x1, x3 = rng.normal(size=25), rng.normal(size=25)
    data = centered(x1=x1, x2=x1.copy(), x3=x3, y=x1 + x3 + rng.normal(size=25))
    betas = control_sensitivity(data, "y", "x1", ["x2", "x3"])
    assert ("x2", "x3") not in betas
    assert ("x3",) in betas


def test_degeneracy_errors_share_exit_code():
    assert issubclass(DegenerateResidualError, DegeneracyError)
    assert DegeneracyError.exit_code == 3
