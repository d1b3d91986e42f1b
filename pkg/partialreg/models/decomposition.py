"""Per-regressor partial regression records."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class PartialDecomposition:
    """One regressor's multivariate beta re-expressed as univariate regressions.

    ``delta`` is the focus column with the controls partialled out. Both
    theorem betas are regressions on ``delta``: v1 of the raw response, v2 of
    the response with the controls partialled out too.
    """

    focus: str
    controls: tuple[str, ...]
    delta: NDArray[np.float64]
    beta_multivariate: float
    beta_prt_v1: float
    beta_prt_v2: float
    semi_partial_r2: float
    partial_r2: float | None
    partial_correlation: float | None
    focus_variance: float
    delta_variance: float

    def __post_init__(self) -> None:
        delta = np.array(self.delta, dtype=np.float64)
        delta.setflags(write=False)
        object.__setattr__(self, "delta", delta)
        object.__setattr__(self, "controls", tuple(self.controls))

    @property
    def variance_retained(self) -> float:
        """Share of the focus variance left after partialling out the controls."""
        return self.delta_variance / self.focus_variance

    def __repr__(self) -> str:
        return (
            f"PartialDecomposition({self.focus} | {', '.join(self.controls) or '-'}: "
            f"beta={self.beta_multivariate:.6g}, v1={self.beta_prt_v1:.6g}, v2={self.beta_prt_v2:.6g})"
        )
