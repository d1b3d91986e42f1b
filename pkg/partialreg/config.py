from pydantic import Field
from pydantic_settings import BaseSettings, SettingsConfigDict


class NumericsSettings(BaseSettings):
    """Tolerances and thresholds shared by the solvers."""

    model_config = SettingsConfigDict(
        env_prefix="PARTIALREG_",
    )

    tolerance: float = Field(
        default=1e-8,
        gt=0.0,
        description="Relative tolerance for coefficient agreement checks",
    )
    condition_threshold: float = Field(
        default=1e10,
        gt=1.0,
        description="Condition estimate above which a design is declared rank deficient",
    )
    degeneracy_rtol: float = Field(
        default=1e-10,
        gt=0.0,
        description="A residual whose norm falls below this fraction of the original norm is degenerate",
    )
    oracle_max_rows: int = Field(default=10_000, ge=1, description="Largest n the normal-equations oracle accepts")
    oracle_max_regressors: int = Field(default=50, ge=1, description="Largest k the normal-equations oracle accepts")


class DecomposeSettings(BaseSettings):
    """Settings for the per-regressor decomposition."""

    model_config = SettingsConfigDict(
        env_prefix="PARTIALREG_DECOMPOSE_",
    )

    max_workers: int = Field(
        default=1,
        ge=1,
        description="Thread pool size for per-regressor records (1 = sequential)",
    )


class SimulationSettings(BaseSettings):
    """Settings for simulation studies."""

    model_config = SettingsConfigDict(
        env_prefix="PARTIALREG_SIM_",
    )

    convergence_sizes: list[int] = Field(
        default_factory=lambda: [100, 1_000, 10_000, 100_000],
        description="Sample sizes visited by the convergence study",
    )
    convergence_seeds: int = Field(default=50, ge=1, description="Replications per sample size")


class Settings(BaseSettings):
    """Global settings."""

    model_config = SettingsConfigDict(
        env_prefix="PARTIALREG_APP_",
    )

    numerics: NumericsSettings = Field(default_factory=NumericsSettings)
    decompose: DecomposeSettings = Field(default_factory=DecomposeSettings)
    simulation: SimulationSettings = Field(default_factory=SimulationSettings)


# Global settings instance that can be accessed throughout the application
_settings: Settings | None = None


def get_settings() -> Settings:
    """Get the global settings instance."""
    global _settings
    if _settings is None:
        _settings = Settings()
    return _settings


def set_settings(settings: Settings | None) -> None:
    """Set the global settings instance (``None`` re-reads the environment on next access)."""
    global _settings
    _settings = settings
