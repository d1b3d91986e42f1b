"""Decompose command - read every coefficient as a univariate regression."""

import time
from pathlib import Path

import click
from rich.console import Console
from rich.table import Table

from partialreg.cli.commands.common import configure_tolerance, design_options, emit, format_option, tolerance_option
from partialreg.config import get_settings, set_settings
from partialreg.pipeline.pipeline import run_decomposition
from partialreg.pipeline.verbose_metrics import get_verbose_metrics, reset_verbose_metrics

err_console = Console(stderr=True)

_STAGE_LABELS: dict[str, tuple[str, str]] = {
    "ingest":    ("1/5 ingest",    "rows"),
    "center":    ("2/5 center",    "columns"),
    "fit":       ("3/5 fit",       "regressors"),
    "decompose": ("4/5 decompose", "records"),
    "ledger":    ("5/5 ledger",    "lines"),
}


def _build_stage_timings_table(elapsed_time: float) -> Table:
    metrics = get_verbose_metrics()
    table = Table(title="Stage timings", show_footer=True)
    table.add_column("Stage", footer="total")
    table.add_column("Items", justify="right", footer="")
    table.add_column("Time (s)", justify="right", footer=f"[green]{elapsed_time:.3f}s[/green]")
    table.add_column("%", justify="right", footer="")

    for stage_key, (label, unit) in _STAGE_LABELS.items():
        if stage_key not in metrics.stage_timings:
            continue
        stage_time = metrics.stage_timings[stage_key]
        stage_count = metrics.stage_counts.get(stage_key, 0)
        stage_percent = (stage_time / elapsed_time * 100) if elapsed_time > 0 else 0.0
        table.add_row(label, f"{stage_count:,} {unit}", f"{stage_time:.3f}s", f"{stage_percent:.0f}%")

    return table


def _display_verbose_metrics(elapsed_time: float) -> None:
    """Stage timings go to stderr so stdout stays a clean report."""
    metrics = get_verbose_metrics()
    err_console.print()
    err_console.print(_build_stage_timings_table(elapsed_time))
    if metrics.condition_estimate is not None:
        err_console.print(f"Condition estimate: {metrics.condition_estimate:.3e}")


def _configure_workers(workers: int | None) -> None:
    if workers is None:
        return
    settings = get_settings()
    decompose_settings = settings.decompose.model_copy(update={"max_workers": workers})
    set_settings(settings.model_copy(update={"decompose": decompose_settings}))


@click.command()
@design_options
@format_option
@tolerance_option
@click.option(
    "--workers",
    "-w",
    type=click.IntRange(1),
    default=None,
    help="Threads for per-regressor records (default: PARTIALREG_DECOMPOSE_MAX_WORKERS or 1)",
)
@click.option(
    "--verbose",
    "-v",
    is_flag=True,
    default=False,
    help="Show per-stage timings on stderr",
)
def decompose(
    input_path: Path,
    response: str,
    regressors: list[str],
    output_format: str,
    tolerance: float | None,
    workers: int | None,
    verbose: bool,
) -> None:
    """Decomposition ledger of RESPONSE on REGRESSORS.

    Each coefficient is recomputed as a regression on its regressor with the
    other regressors partialled out, and the agreement is asserted.
    """
    tolerance = configure_tolerance(tolerance)
    _configure_workers(workers)

    reset_verbose_metrics()
    start_time = time.monotonic()
    report = run_decomposition(input_path, response, regressors, tolerance)
    elapsed_time = time.monotonic() - start_time

    emit(report, output_format)
    if verbose:
        _display_verbose_metrics(elapsed_time)
