"""Pearson-demo command - two-regressor closed forms against the general machinery."""

import click

from partialreg.cli.commands.common import configure_tolerance, emit, format_option, seed_option, tolerance_option
from partialreg.models.pearson import PearsonScenario
from partialreg.pipeline.pipeline import run_pearson_demo


def _scenario(
    beta_y_x1: float,
    beta_y_x2: float,
    beta_x2_x1: float | None,
    beta_x1_x2: float | None,
    rho: float | None,
) -> PearsonScenario:
    if rho is not None:
        if beta_x2_x1 is not None or beta_x1_x2 is not None:
            raise click.BadParameter("--rho cannot be combined with --beta-x2-x1/--beta-x1-x2", param_hint="--rho")
        return PearsonScenario.from_correlation(beta_y_x1, rho, beta_y_x2)
    if beta_x2_x1 is None or beta_x1_x2 is None:
        raise click.BadParameter(
            "give --rho, or both --beta-x2-x1 and --beta-x1-x2", param_hint="--beta-x2-x1/--beta-x1-x2"
        )
    return PearsonScenario(beta_y_x1=beta_y_x1, beta_y_x2=beta_y_x2, beta_x2_x1=beta_x2_x1, beta_x1_x2=beta_x1_x2)


@click.command(name="pearson-demo")
@click.option("--beta-y-x1", type=float, default=0.5, show_default=True, help="Slope of y on x1 alone")
@click.option("--beta-y-x2", type=float, default=0.0, show_default=True, help="Slope of y on x2 alone")
@click.option("--beta-x2-x1", type=float, default=None, help="Slope of x2 on x1")
@click.option("--beta-x1-x2", type=float, default=None, help="Slope of x1 on x2")
@click.option(
    "--rho",
    type=click.FloatRange(-1.0, 1.0),
    default=None,
    help="Correlation of unit-variance regressors (sets both regressor slopes)",
)
@click.option(
    "--n", "n", type=click.IntRange(4), default=200, show_default=True, help="Rows in the exact-moment sample"
)
@seed_option(default=0)
@format_option
@tolerance_option
def pearson_demo(
    beta_y_x1: float,
    beta_y_x2: float,
    beta_x2_x1: float | None,
    beta_x1_x2: float | None,
    rho: float | None,
    n: int,
    seed: int,
    output_format: str,
    tolerance: float | None,
) -> None:
    """Two-regressor joint betas from simple slopes, checked on an exact-moment sample."""
    tolerance = configure_tolerance(tolerance)
    scenario = _scenario(beta_y_x1, beta_y_x2, beta_x2_x1, beta_x1_x2, rho)
    emit(run_pearson_demo(scenario, n, seed, tolerance), output_format)
