import numpy as np
import pytest

from partialreg.errors import RankDeficiencyError, UnknownColumnError
from partialreg.models.pearson import PearsonScenario
from partialreg.pipeline.ingest import load_simulation_spec
from partialreg.pipeline.pipeline import run_decomposition, run_fit, run_pearson_demo, run_simulation
from partialreg.pipeline.verbose_metrics import get_verbose_metrics, reset_verbose_metrics

from ..conftest import CSV_FIXTURES, SPEC_FIXTURES


def test_decomposition_ledger_rows_agree():
    report = run_decomposition(CSV_FIXTURES / "three_columns.csv", "y", ["x1", "x2"], tolerance=1e-8)
    assert [row.focus for row in report.rows] == ["x1", "x2"]
    for row in report.rows:
        assert row.beta_prt_v1 == pytest.approx(row.beta_multivariate, rel=1e-8)
        assert row.beta_prt_v2 == pytest.approx(row.beta_multivariate, rel=1e-8)
        assert len(row.delta) == 6
    assert report.rows[0].focus_mean == pytest.approx(3.5)
    assert report.fit_summary.n == 6
    assert report.fit_summary.k == 2
    assert report.tolerance == 1e-8


def test_single_regressor_ledger():
    report = run_decomposition(CSV_FIXTURES / "single_regressor.csv", "y", ["x"])
    (row,) = report.rows
    assert row.controls == []
    assert row.beta_prt_v1 == pytest.approx(row.beta_multivariate, rel=1e-12)
    assert row.partial_r2 == pytest.approx(report.fit_summary.r_squared, rel=1e-12)


def test_stage_timings_recorded():
    reset_verbose_metrics()
    run_decomposition(CSV_FIXTURES / "three_columns.csv", "y", ["x1", "x2"])
    metrics = get_verbose_metrics()
    assert list(metrics.stage_timings) == ["ingest", "center", "fit", "decompose", "ledger"]
    assert metrics.stage_counts["ingest"] == 6
    assert metrics.stage_counts["decompose"] == 2
    assert metrics.condition_estimate is not None and metrics.condition_estimate >= 1.0


def test_collinear_file_is_degenerate():
    with pytest.raises(RankDeficiencyError):
        run_decomposition(CSV_FIXTURES / "collinear.csv", "y", ["x1", "x2"])


def test_unknown_regressor():
    with pytest.raises(UnknownColumnError):
        run_decomposition(CSV_FIXTURES / "three_columns.csv", "y", ["x1", "x9"])


def test_fit_report_implied_intercept():
    report = run_fit(CSV_FIXTURES / "single_regressor.csv", "y", ["x"])
    (row,) = report.coefficients
    assert row.mean == pytest.approx(2.5)
    summary = report.fit_summary
    assert summary.implied_intercept == pytest.approx(summary.response_mean - row.beta * row.mean)


def test_pearson_demo_attenuation():
    report = run_pearson_demo(PearsonScenario.from_correlation(0.5, 0.6), n=200, seed=0, tolerance=1e-10)
    assert report.beta1 == pytest.approx(0.78125)
    assert report.beta2 == pytest.approx(-0.46875)
    assert all(check.agrees for check in report.checks)
    assert report.delta_identity is not None and report.delta_identity.holds
    assert report.amplification is not None and report.amplification.covariance_preserved
    assert report.ledger is not None
    assert report.ledger.rows[0].beta_prt_v2 == pytest.approx(0.78125, rel=1e-10)


def test_pearson_demo_general_case_has_ledger_only():
    s = PearsonScenario(beta_y_x1=0.5, beta_y_x2=0.3, beta_x2_x1=0.4, beta_x1_x2=0.5)
    report = run_pearson_demo(s, n=100, seed=1)
    assert report.delta_identity is None
    assert report.amplification is None
    assert report.ledger is not None
    assert any("no single-coefficient reading" in line for line in report.narrative)


def test_simulation_endogenous_spec():
    spec = load_simulation_spec(SPEC_FIXTURES / "endogenous.toml")
    result, report = run_simulation(spec)
    assert result.dataset.n_rows == 2000
    assert report.bias.gamma_population == pytest.approx([1.5])
    assert abs(report.bias.gap_to_population[0]) <= 4.0 * report.bias.monte_carlo_se[0]
    assert report.convergence is None
    assert any("not to the structural beta" in line for line in report.narrative)


def test_simulation_with_convergence(monkeypatch):
    monkeypatch.setenv("PARTIALREG_SIM_CONVERGENCE_SIZES", "[100, 400, 1600]")
    monkeypatch.setenv("PARTIALREG_SIM_CONVERGENCE_SEEDS", "5")
    spec = load_simulation_spec(SPEC_FIXTURES / "exogenous.json")
    _, report = run_simulation(spec, convergence=True)
    assert report.convergence is not None
    assert [p.n for p in report.convergence.points] == [100, 400, 1600]
    assert np.isfinite(report.convergence.slope)
