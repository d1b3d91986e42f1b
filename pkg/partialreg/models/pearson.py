"""Two-regressor scenario described by simple-regression coefficients."""

import math

from pydantic import BaseModel, ConfigDict, Field, computed_field, model_validator

from partialreg.errors import DegenerateCorrelationError, ScenarioInputError


class PearsonScenario(BaseModel):
    """Simple-regression inputs of the two-regressor case.

    ``rho_sq`` is implied: the product of the two regressor-on-regressor
    slopes. Mismatched slope signs are rejected as invalid input; a product
    of 1 or more is rejected as degenerate.
    """

    model_config = ConfigDict(frozen=True)

    beta_y_x1: float = Field(allow_inf_nan=False, description="Slope of Y on X1 alone")
    beta_y_x2: float = Field(default=0.0, allow_inf_nan=False, description="Slope of Y on X2 alone")
    beta_x2_x1: float = Field(allow_inf_nan=False, description="Slope of X2 on X1")
    beta_x1_x2: float = Field(allow_inf_nan=False, description="Slope of X1 on X2")

    @computed_field  # type: ignore[prop-decorator]
    @property
    def rho_sq(self) -> float:
        return self.beta_x2_x1 * self.beta_x1_x2

    @model_validator(mode="after")
    def _check_slopes(self) -> "PearsonScenario":
        if (self.beta_x2_x1 == 0.0) != (self.beta_x1_x2 == 0.0) or self.rho_sq < 0.0:
            raise ScenarioInputError(
                f"beta_x2_x1={self.beta_x2_x1} and beta_x1_x2={self.beta_x1_x2} must share a sign or both be zero"
            )
        if self.rho_sq >= 1.0:
            raise DegenerateCorrelationError(self.rho_sq)
        return self

    @classmethod
    def from_correlation(cls, beta_y_x1: float, rho: float, beta_y_x2: float = 0.0) -> "PearsonScenario":
        """Scenario with unit-variance regressors correlated at ``rho``."""
        return cls(beta_y_x1=beta_y_x1, beta_y_x2=beta_y_x2, beta_x2_x1=rho, beta_x1_x2=rho)

    @property
    def is_non_assortative(self) -> bool:
        return self.rho_sq == 0.0

    @property
    def rho(self) -> float:
        """Signed correlation of X1 and X2."""
        return math.copysign(math.sqrt(self.rho_sq), self.beta_x2_x1)
