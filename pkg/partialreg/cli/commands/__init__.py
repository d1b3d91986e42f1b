"""CLI subcommands."""

from .decompose import decompose
from .fit import fit
from .pearson_demo import pearson_demo
from .simulate import simulate

__all__ = ["decompose", "fit", "pearson_demo", "simulate"]
