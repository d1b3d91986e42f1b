from pathlib import Path

import numpy as np
import pytest

from partialreg.config import set_settings
from partialreg.models.dataset import Dataset
from partialreg.regression.core_ols import center

FIXTURES = Path(__file__).parent / "fixtures"
CSV_FIXTURES = FIXTURES / "csv"
SPEC_FIXTURES = FIXTURES / "specs"


@pytest.fixture(autouse=True)
def fresh_settings():
    """Every test starts from environment-derived settings."""
    set_settings(None)
    yield
    set_settings(None)


def regressor_names(k: int) -> list[str]:
    return [f"x{j + 1}" for j in range(k)]


def random_dataset(
    rng: np.random.Generator,
    n: int,
    k: int,
    *,
    scale_decades: float = 0.0,
    noise: float = 1.0,
) -> tuple[Dataset, list[str]]:
    """Centered Gaussian design x1..xk with y = X b + noise; column scales span 10**±scale_decades."""
    names = regressor_names(k)
    scales = 10.0 ** rng.uniform(-scale_decades, scale_decades, size=k)
    x = rng.standard_normal((n, k)) * scales
    beta = rng.normal(size=k) / scales
    y = x @ beta + noise * rng.standard_normal(n)
    raw = Dataset(column_names=(*names, "y"), values=np.column_stack([x, y]))
    return center(raw), names


def centered(**columns: list[float]) -> Dataset:
    """Dataset from keyword columns, centered."""
    return center(Dataset.from_columns(columns))


def column_scale(data: Dataset, a: str, b: str) -> float:
    return float(np.max(np.abs(data.column(a))) * np.max(np.abs(data.column(b))))
