"""Simulation specifications and their realized samples."""

from dataclasses import dataclass
from typing import Any

import numpy as np
from numpy.typing import NDArray
from pydantic import BaseModel, ConfigDict, Field, model_validator

from partialreg.errors import CovarianceError
from partialreg.models.dataset import Dataset

SYMMETRY_RTOL = 1e-12
EXTENDED_PSD_RTOL = 1e-12


class SimulationSpec(BaseModel):
    """Population of (X, eps) jointly Gaussian with Y = X beta + eps.

    ``sigma_x_eps`` is cov(X, eps): zero gives an exogenous model whose best
    fit recovers ``beta``; anything else moves the best fit away from it.
    """

    model_config = ConfigDict(frozen=True, populate_by_name=True, extra="forbid")

    k: int = Field(ge=1, description="Number of regressors")
    sigma_xx: list[list[float]] = Field(description="k x k population covariance of X")
    beta_structural: list[float] = Field(alias="beta", description="Structural coefficients")
    sigma_eps: float = Field(gt=0.0, allow_inf_nan=False, description="Standard deviation of eps")
    sigma_x_eps: list[float] = Field(description="cov(X, eps), the endogeneity dial")
    n: int = Field(ge=3, description="Sample size")
    seed: int = Field(ge=0, lt=2**64, description="PCG64 seed")
    regressor_names: list[str] | None = Field(default=None, description="Column names for X (default x1..xk)")
    response_name: str = Field(default="y", description="Column name for Y")
    label: str | None = Field(default=None, description="Provenance label carried into reports")

    @model_validator(mode="after")
    def _check_shapes(self) -> "SimulationSpec":
        sigma = np.asarray(self.sigma_xx, dtype=np.float64)
        if sigma.shape != (self.k, self.k):
            raise ValueError(f"sigma_xx must be {self.k}x{self.k}, got shape {sigma.shape}")
        if len(self.beta_structural) != self.k:
            raise ValueError(f"beta must have {self.k} entries, got {len(self.beta_structural)}")
        if len(self.sigma_x_eps) != self.k:
            raise ValueError(f"sigma_x_eps must have {self.k} entries, got {len(self.sigma_x_eps)}")
        if self.regressor_names is not None and len(self.regressor_names) != self.k:
            raise ValueError(f"regressor_names must have {self.k} entries")
        if self.n < self.k + 2:
            raise ValueError(f"n must be at least k + 2 = {self.k + 2}, got {self.n}")
        self.extended_root()
        return self

    @property
    def names(self) -> list[str]:
        return list(self.regressor_names or [f"x{j + 1}" for j in range(self.k)])

    def covariance_xx(self) -> NDArray[np.float64]:
        return np.asarray(self.sigma_xx, dtype=np.float64)

    def extended_covariance(self) -> NDArray[np.float64]:
        """(k+1) x (k+1) covariance of (X, eps), eps last."""
        cross = np.asarray(self.sigma_x_eps, dtype=np.float64)
        top = np.column_stack([self.covariance_xx(), cross])
        bottom = np.append(cross, self.sigma_eps**2)
        return np.vstack([top, bottom])

    def extended_root(self) -> NDArray[np.float64]:
        """Lower-triangular L with L L' equal to the extended covariance.

        sigma_xx must be positive definite; the eps row may sit on the
        semidefinite boundary (eps an exact linear function of X).
        """
        sigma = self.covariance_xx()
        scale = max(1.0, float(np.max(np.abs(sigma))))
        if not np.allclose(sigma, sigma.T, rtol=0.0, atol=SYMMETRY_RTOL * scale):
            raise CovarianceError("sigma_xx is not symmetric")
        try:
            l_xx = np.linalg.cholesky(sigma)
        except np.linalg.LinAlgError:
            raise CovarianceError("sigma_xx is not positive definite") from None

        cross = np.linalg.solve(l_xx, np.asarray(self.sigma_x_eps, dtype=np.float64))
        remainder = self.sigma_eps**2 - float(np.dot(cross, cross))
        if remainder < -EXTENDED_PSD_RTOL * self.sigma_eps**2:
            raise CovarianceError(
                f"cov(X, eps) is too large for sigma_eps={self.sigma_eps}: extended covariance is not PSD"
            )
        root = np.zeros((self.k + 1, self.k + 1))
        root[: self.k, : self.k] = l_xx
        root[self.k, : self.k] = cross
        root[self.k, self.k] = np.sqrt(max(remainder, 0.0))
        return root

    def with_overrides(self, **updates: Any) -> "SimulationSpec":
        """Validated copy with some fields replaced (None values are ignored)."""
        payload = self.model_dump(by_alias=True)
        payload.update({key: value for key, value in updates.items() if value is not None})
        return SimulationSpec.model_validate(payload)


@dataclass(frozen=True, eq=False)
class TruthRecord:
    """What the simulation knows and a fit cannot see."""

    beta_structural: NDArray[np.float64]
    epsilon: NDArray[np.float64]
    gamma_population: NDArray[np.float64]


@dataclass(frozen=True, eq=False)
class SimulationResult:
    raw: Dataset
    dataset: Dataset
    truth: TruthRecord
