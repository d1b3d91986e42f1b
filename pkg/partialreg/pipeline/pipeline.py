import logging
import time
from collections.abc import Sequence
from pathlib import Path

from partialreg.config import get_settings
from partialreg.models.dataset import Dataset
from partialreg.models.decomposition import PartialDecomposition
from partialreg.models.fit import RegressionFit
from partialreg.models.pearson import PearsonScenario
from partialreg.models.report import (
    ClosedFormCheck,
    ConvergenceStudy,
    FitReport,
    LedgerReport,
    PearsonDemoReport,
    SimulationReport,
)
from partialreg.models.simulation import SimulationResult, SimulationSpec
from partialreg.pipeline.ingest import ingest_csv
from partialreg.pipeline.ledger import build_fit_report, build_ledger, build_pearson_demo, build_simulation_report
from partialreg.pipeline.verbose_metrics import (
    record_condition_estimate,
    record_stage_count,
    record_stage_timing,
)
from partialreg.regression.core_ols import betas_agree, center, coefficient_scale, fit_ols
from partialreg.regression.partial import decompose
from partialreg.regression.pearson import (
    SCENARIO_COLUMNS,
    amplification_and_variance,
    check_delta_identity,
    multivariate_beta1,
    multivariate_beta2,
    scenario_sample,
)
from partialreg.regression.synthetic import bias_report, convergence_study, generate

logger = logging.getLogger(__name__)


def _run_ingest_stage(path: Path) -> Dataset:
    logger.info("Stage 1/5: Ingesting %s...", path)
    _t = time.monotonic()
    raw = ingest_csv(path)
    elapsed = time.monotonic() - _t
    record_stage_timing("ingest", elapsed)
    record_stage_count("ingest", raw.n_rows)
    logger.info("Ingest complete: %d row(s) (%.3fs)", raw.n_rows, elapsed)
    return raw


def _run_center_stage(raw: Dataset) -> Dataset:
    logger.info("Stage 2/5: Centering...")
    _t = time.monotonic()
    data = center(raw)
    elapsed = time.monotonic() - _t
    record_stage_timing("center", elapsed)
    record_stage_count("center", len(data.column_names))
    logger.info("Centered %d column(s) (%.3fs)", len(data.column_names), elapsed)
    return data


def _run_fit_stage(data: Dataset, response: str, regressors: Sequence[str]) -> RegressionFit:
    logger.info("Stage 3/5: Fitting %s on %d regressor(s)...", response, len(regressors))
    _t = time.monotonic()
    fit = fit_ols(data, response, regressors)
    elapsed = time.monotonic() - _t
    record_stage_timing("fit", elapsed)
    record_stage_count("fit", len(regressors))
    record_condition_estimate(fit.condition_estimate)
    logger.info("Fit complete: R2=%.6f, condition=%.3e (%.3fs)", fit.r_squared, fit.condition_estimate, elapsed)
    return fit


def _run_decompose_stage(
    data: Dataset, response: str, regressors: Sequence[str], tolerance: float
) -> list[PartialDecomposition]:
    logger.info("Stage 4/5: Partialling out each regressor...")
    _t = time.monotonic()
    records = decompose(data, response, regressors, verify=True, tolerance=tolerance)
    elapsed = time.monotonic() - _t
    record_stage_timing("decompose", elapsed)
    record_stage_count("decompose", len(records))
    logger.info("Decomposition complete: %d record(s) verified (%.3fs)", len(records), elapsed)
    return records


def _run_ledger_stage(
    fit: RegressionFit, records: list[PartialDecomposition], data: Dataset, tolerance: float
) -> LedgerReport:
    logger.info("Stage 5/5: Building ledger...")
    _t = time.monotonic()
    report = build_ledger(fit, records, data, tolerance)
    elapsed = time.monotonic() - _t
    record_stage_timing("ledger", elapsed)
    record_stage_count("ledger", len(report.narrative))
    return report


def decompose_dataset(
    data: Dataset, response: str, regressors: Sequence[str], tolerance: float | None = None
) -> LedgerReport:
    """Fit, decompose and build the ledger for an already centered dataset."""
    if tolerance is None:
        tolerance = get_settings().numerics.tolerance
    fit = _run_fit_stage(data, response, regressors)
    records = _run_decompose_stage(data, response, regressors, tolerance)
    return _run_ledger_stage(fit, records, data, tolerance)


def run_decomposition(
    path: str | Path, response: str, regressors: Sequence[str], tolerance: float | None = None
) -> LedgerReport:
    """Run the decompose pipeline on a CSV file."""
    logger.info("Starting decomposition of %s on %s", response, ", ".join(regressors))
    raw = _run_ingest_stage(Path(path))
    data = _run_center_stage(raw)
    report = decompose_dataset(data, response, regressors, tolerance)
    logger.info("Pipeline complete: %d row(s) in ledger", len(report.rows))
    return report


def run_fit(path: str | Path, response: str, regressors: Sequence[str]) -> FitReport:
    data = center(ingest_csv(path))
    return build_fit_report(fit_ols(data, response, regressors))


def run_pearson_demo(
    s: PearsonScenario, n: int, seed: int, tolerance: float | None = None
) -> PearsonDemoReport:
    """Closed forms for ``s`` checked against the general machinery on an exact-moment sample."""
    if tolerance is None:
        tolerance = get_settings().numerics.tolerance
    beta1, beta2 = multivariate_beta1(s), multivariate_beta2(s)
    x1, x2, y = SCENARIO_COLUMNS
    sample = scenario_sample(s, n, seed)
    fit = fit_ols(sample, y, [x1, x2])

    checks = []
    for name, closed_form, fitted, column in (("beta1", beta1, fit.beta[0], x1), ("beta2", beta2, fit.beta[1], x2)):
        scale = coefficient_scale(sample.column(y), sample.column(column))
        checks.append(
            ClosedFormCheck(
                name=name,
                closed_form=closed_form,
                fitted=float(fitted),
                agrees=betas_agree(closed_form, float(fitted), tolerance, scale),
            )
        )
        logger.info("%s: closed form %.12g, fitted %.12g", name, closed_form, fitted)

    delta_identity = amplification = None
    if s.beta_y_x2 == 0.0:
        delta_identity = check_delta_identity(s, sample, tolerance=tolerance)
        amplification = amplification_and_variance(s)
    ledger = decompose_dataset(sample, y, [x1, x2], tolerance)
    return build_pearson_demo(s, beta1, beta2, checks, ledger, delta_identity, amplification)


def run_simulation(
    spec: SimulationSpec,
    convergence: bool = False,
    progress: bool = False,
) -> tuple[SimulationResult, SimulationReport]:
    """Generate a sample, fit it, and compare the fit with the population truth."""
    result = generate(spec)
    fit = fit_ols(result.dataset, spec.response_name, spec.names)
    study: ConvergenceStudy | None = None
    if convergence:
        settings = get_settings().simulation
        study = convergence_study(
            spec, settings.convergence_sizes, settings.convergence_seeds, progress=progress
        )
    return result, build_simulation_report(spec, bias_report(spec, fit), study)
