"""Options and output handling shared by the subcommands."""

from collections.abc import Callable
from pathlib import Path
from typing import Any, TypeVar

import click
from pydantic import BaseModel
from rich.console import Console

from partialreg.config import get_settings, set_settings
from partialreg.formatters import format_as_json, render_table

F = TypeVar("F", bound=Callable[..., Any])

# ten-column ledger rows fit without folding numbers
TABLE_WIDTH = 160

console = Console(width=TABLE_WIDTH)


def parse_names(value: str) -> list[str]:
    """Parse a comma-separated list of column names."""
    return [name.strip() for name in value.split(",") if name.strip()]


def _regressors_callback(ctx: click.Context, param: click.Parameter, value: str) -> list[str]:
    names = parse_names(value)
    if not names:
        raise click.BadParameter("at least one regressor name is required", ctx=ctx, param=param)
    return names


def format_option(func: F) -> F:
    return click.option(
        "--format",
        "-f",
        "output_format",
        type=click.Choice(["json", "table"], case_sensitive=False),
        default="json",
        help="Output format (default: json)",
    )(func)


def tolerance_option(func: F) -> F:
    return click.option(
        "--tolerance",
        "-t",
        type=click.FloatRange(min=0.0, min_open=True),
        default=None,
        help="Relative tolerance for coefficient agreement (default: PARTIALREG_TOLERANCE or 1e-8)",
    )(func)


def design_options(func: F) -> F:
    """--input, --response and --regressors."""
    func = click.option(
        "--regressors",
        "-x",
        required=True,
        callback=_regressors_callback,
        help="Comma-separated regressor column names, in report order",
    )(func)
    func = click.option("--response", "-y", required=True, help="Response column name")(func)
    return click.option(
        "--input",
        "-i",
        "input_path",
        required=True,
        type=click.Path(exists=True, dir_okay=False, path_type=Path),
        help="CSV file with a header row",
    )(func)


def seed_option(default: int | None) -> Callable[[F], F]:
    def decorator(func: F) -> F:
        return click.option(
            "--seed",
            "-s",
            type=click.IntRange(0, 2**64 - 1),
            default=default,
            help="Seed for the PCG64 generator",
        )(func)

    return decorator


def configure_tolerance(tolerance: float | None) -> float:
    """Apply a per-invocation tolerance override and return the tolerance in effect."""
    settings = get_settings()
    if tolerance is not None:
        numerics = settings.numerics.model_copy(update={"tolerance": tolerance})
        set_settings(settings.model_copy(update={"numerics": numerics}))
    return get_settings().numerics.tolerance


def emit(report: BaseModel, output_format: str) -> None:
    """Write a report to stdout."""
    if output_format.lower() == "json":
        click.echo(format_as_json(report))
    else:
        render_table(report, console)
