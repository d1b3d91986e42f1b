"""CLI module."""

from partialreg.cli.cli import main

__all__ = ["main"]
