"""Tests for JSON and table rendering."""

import io
import json

import numpy as np
import pytest
from rich.console import Console

from partialreg.formatters import format_as_json, render_table
from partialreg.formatters.table import fmt
from partialreg.models.pearson import PearsonScenario
from partialreg.models.report import FitSummary
from partialreg.pipeline.pipeline import decompose_dataset, run_pearson_demo

from .conftest import random_dataset


def _render(report) -> str:
    buf = io.StringIO()
    render_table(report, Console(file=buf, markup=True, highlight=False, width=250))
    return buf.getvalue()


@pytest.fixture
def ledger():
    data, names = random_dataset(np.random.default_rng(13), 80, 3)
    return decompose_dataset(data, "y", names)


def test_fmt_uses_six_significant_digits():
    assert fmt(0.78125) == "0.78125"
    assert fmt(1.0 / 3.0) == "0.333333"
    assert fmt(123456789.0) == "1.23457e+08"


def test_json_keeps_full_precision(ledger):
    payload = json.loads(format_as_json(ledger))
    assert payload["rows"][0]["beta_multivariate"] == ledger.rows[0].beta_multivariate
    assert payload["narrative"] == ledger.narrative


def test_json_is_deterministic(ledger):
    assert format_as_json(ledger) == format_as_json(ledger)


def test_compact_json(ledger):
    assert "\n" not in format_as_json(ledger, pretty=False)


def test_table_prints_narrative_before_ledger(ledger):
    output = _render(ledger)
    assert output.index("allowed for") < output.index("Decomposition ledger")
    assert output.index("Decomposition ledger") < output.index("Fit summary")


def test_table_shows_rounded_values(ledger):
    output = _render(ledger)
    for row in ledger.rows:
        assert fmt(row.beta_multivariate) in output
        assert fmt(row.partial_r2) in output


def test_pearson_demo_table():
    report = run_pearson_demo(PearsonScenario.from_correlation(0.5, 0.6), n=50, seed=2)
    output = _render(report)
    assert "0.78125" in output
    assert "-0.46875" in output
    assert "Amplification and variance" in output
    assert "NO" not in output.split()


def test_unknown_report_type_rejected():
    summary = FitSummary(r_squared=0.5, n=10, k=1, condition_estimate=1.0, response_mean=0.0, implied_intercept=0.0)
    with pytest.raises(TypeError):
        render_table(summary, Console(file=io.StringIO()))


def test_undefined_values_render_as_text():
    assert fmt(None) == "undefined"
