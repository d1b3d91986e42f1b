"""Simulate command - best-fit against structural coefficients on generated data."""

from pathlib import Path

import click

from partialreg.cli.commands.common import configure_tolerance, emit, format_option, seed_option, tolerance_option
from partialreg.models.simulation import SimulationSpec
from partialreg.pipeline.ingest import load_simulation_spec, write_csv
from partialreg.pipeline.pipeline import run_simulation
from partialreg.regression.synthetic import pauperism_standin_spec


def _load_spec(spec_path: Path | None, standin: str | None) -> SimulationSpec:
    if spec_path is not None and standin is not None:
        raise click.BadParameter("--spec and --standin are mutually exclusive", param_hint="--spec")
    if spec_path is not None:
        return load_simulation_spec(spec_path)
    if standin == "pauperism":
        return pauperism_standin_spec()
    raise click.BadParameter("one of --spec or --standin is required", param_hint="--spec")


@click.command()
@click.option(
    "--spec",
    "spec_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="Simulation config (.toml or .json) with keys k, sigma_xx, beta, sigma_eps, sigma_x_eps, n, seed",
)
@click.option(
    "--standin",
    type=click.Choice(["pauperism"], case_sensitive=False),
    default=None,
    help="Use a built-in, labelled synthetic stand-in instead of --spec",
)
@seed_option(default=None)
@click.option("--n", "n", type=click.IntRange(3), default=None, help="Override the sample size")
@click.option(
    "--output",
    "-o",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Also write the raw sample as CSV in the ingestion format",
)
@click.option("--convergence", is_flag=True, default=False, help="Append a convergence study across sample sizes")
@click.option("--progress", "-p", is_flag=True, default=False, help="Show progress bars for the convergence study")
@format_option
@tolerance_option
def simulate(
    spec_path: Path | None,
    standin: str | None,
    seed: int | None,
    n: int | None,
    output: Path | None,
    convergence: bool,
    progress: bool,
    output_format: str,
    tolerance: float | None,
) -> None:
    """Generate (X, eps) from a spec, fit it, and set the fit against the truth."""
    configure_tolerance(tolerance)
    spec = _load_spec(spec_path, standin.lower() if standin else None).with_overrides(seed=seed, n=n)
    result, report = run_simulation(spec, convergence=convergence, progress=progress)
    if output is not None:
        write_csv(result.raw, output)
    emit(report, output_format)
