"""CLI interface for partialreg."""

import logging
import sys
from collections.abc import Sequence
from importlib.metadata import PackageNotFoundError, version
from typing import Any

import click
from pydantic import ValidationError
from rich.console import Console
from rich.logging import RichHandler
from rich.markup import escape

from partialreg.cli.commands import decompose, fit, pearson_demo, simulate
from partialreg.errors import PartialRegError

err_console = Console(stderr=True)

EXIT_VALIDATION = 2
EXIT_USAGE = 64


def get_version() -> str:
    try:
        return version("partialreg")
    except PackageNotFoundError:
        return "unknown"


def setup_logging(log_level: str) -> None:
    """Configure logging with rich handler on stderr."""
    logging.basicConfig(
        level=log_level,
        format="%(message)s",
        handlers=[RichHandler(console=err_console, rich_tracebacks=True)],
        force=True,
    )


def _report_error(message: str) -> None:
    err_console.print(f"[bold red]Error:[/bold red] {escape(message)}", soft_wrap=True)


def _exit_code_for(e: Exception) -> int:
    """Map an exception escaping a command to the process exit code."""
    if isinstance(e, click.BadParameter):
        e.show()
        return EXIT_VALIDATION
    if isinstance(e, click.UsageError):
        e.show()
        return EXIT_USAGE
    if isinstance(e, click.ClickException):
        e.show()
        return e.exit_code
    if isinstance(e, PartialRegError):
        _report_error(str(e))
        return e.exit_code
    if isinstance(e, ValidationError):
        _report_error(f"{e.error_count()} validation error(s)\n{e}")
        return EXIT_VALIDATION
    raise e


class PartialRegGroup(click.Group):
    """Group whose exit status follows the error hierarchy: 2 invalid input, 3 degenerate, 64 usage."""

    def main(  # type: ignore[override]
        self,
        args: Sequence[str] | None = None,
        prog_name: str | None = None,
        complete_var: str | None = None,
        standalone_mode: bool = True,
        **extra: Any,
    ) -> Any:
        try:
            rv = super().main(args, prog_name, complete_var, standalone_mode=False, **extra)
        except click.Abort:
            click.echo("Aborted!", err=True)
            code = 1
        except (click.ClickException, PartialRegError, ValidationError) as e:
            code = _exit_code_for(e)
        else:
            if not standalone_mode:
                return rv
            code = rv if isinstance(rv, int) else 0
        if standalone_mode:
            sys.exit(code)
        return code


@click.group(cls=PartialRegGroup)
@click.pass_context
@click.version_option(version=get_version(), prog_name="partialreg")
@click.option(
    "--log-level",
    "-l",
    type=click.Choice(["DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"], case_sensitive=False),
    default="WARNING",
    help="Set the logging level",
)
def main(ctx: click.Context, log_level: str) -> None:
    """Linear regression read through the partial regression theorem."""
    setup_logging(log_level.upper())

    ctx.ensure_object(dict)
    ctx.obj["log_level"] = log_level


# Register subcommands
main.add_command(fit)
main.add_command(decompose)
main.add_command(pearson_demo)
main.add_command(simulate)


if __name__ == "__main__":
    main()
