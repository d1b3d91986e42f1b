"""Fit command - least squares on a centered CSV."""

from pathlib import Path

import click

from partialreg.cli.commands.common import configure_tolerance, design_options, emit, format_option, tolerance_option
from partialreg.pipeline.pipeline import run_fit


@click.command()
@design_options
@format_option
@tolerance_option
def fit(
    input_path: Path,
    response: str,
    regressors: list[str],
    output_format: str,
    tolerance: float | None,
) -> None:
    """Fit RESPONSE on REGRESSORS (no intercept column; data are centered first)."""
    configure_tolerance(tolerance)
    emit(run_fit(input_path, response, regressors), output_format)
