"""Least-squares fit results."""

from dataclasses import dataclass

import numpy as np
from numpy.typing import NDArray


@dataclass(frozen=True, eq=False)
class RegressionFit:
    """Coefficients, residuals and diagnostics of one least-squares fit.

    ``beta`` holds the best-fit coefficients (the gamma of a best linear
    predictor); whether they also estimate a structural parameter is a
    property of the data-generating process, not of the fit.
    """

    response_name: str
    regressor_names: tuple[str, ...]
    beta: NDArray[np.float64]
    residuals: NDArray[np.float64]
    fitted: NDArray[np.float64]
    r_squared: float
    rank: int
    condition_estimate: float
    response_mean: float = 0.0
    regressor_means: tuple[float, ...] = ()

    def __post_init__(self) -> None:
        for name in ("beta", "residuals", "fitted"):
            array = np.array(getattr(self, name), dtype=np.float64)
            array.setflags(write=False)
            object.__setattr__(self, name, array)
        object.__setattr__(self, "regressor_names", tuple(self.regressor_names))
        if not self.regressor_means:
            object.__setattr__(self, "regressor_means", (0.0,) * len(self.regressor_names))

    @property
    def n_obs(self) -> int:
        return int(self.residuals.shape[0])

    @property
    def implied_intercept(self) -> float:
        """Intercept of the equivalent uncentered fit: mean(Y) - sum_j beta_j mean(X_j)."""
        return float(self.response_mean - np.dot(self.beta, np.asarray(self.regressor_means)))

    def coefficient(self, name: str) -> float:
        return float(self.beta[self.regressor_names.index(name)])

    def __repr__(self) -> str:
        terms = ", ".join(f"{n}={b:.6g}" for n, b in zip(self.regressor_names, self.beta, strict=True))
        return f"RegressionFit({self.response_name} ~ {terms}; R2={self.r_squared:.4f})"
