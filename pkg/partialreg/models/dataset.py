"""Column-oriented observation matrix."""

from collections.abc import Mapping, Sequence
from dataclasses import dataclass, field

import numpy as np
from numpy.typing import ArrayLike, NDArray

from partialreg.errors import (
    DuplicateColumnError,
    EmptyDatasetError,
    InputValidationError,
    NotCenteredError,
    UnknownColumnError,
)

CENTERING_RTOL = 1e-12


@dataclass(frozen=True, eq=False)
class Dataset:
    """Named numeric columns of equal length n.

    ``values`` is stored as a read-only (n, p) float64 array. ``means`` records
    what was subtracted at centering time so the raw data can be restored.
    """

    column_names: tuple[str, ...]
    values: NDArray[np.float64]
    means: tuple[float, ...] = field(default=())
    centered: bool = False

    def __post_init__(self) -> None:
        values = np.array(self.values, dtype=np.float64)
        if values.ndim == 1:
            values = values.reshape(-1, 1)
        if values.ndim != 2:
            raise InputValidationError(f"Expected a 2-D observation matrix, got {values.ndim} dimension(s)")

        names = tuple(self.column_names)
        if len(names) != values.shape[1]:
            raise InputValidationError(f"{len(names)} column name(s) for {values.shape[1]} column(s)")
        seen: set[str] = set()
        for name in names:
            if name in seen:
                raise DuplicateColumnError(name)
            seen.add(name)
        if values.shape[0] < 1 or values.shape[1] < 1:
            raise EmptyDatasetError("Dataset has no observations")

        means = tuple(float(m) for m in self.means) if self.means else (0.0,) * len(names)
        if len(means) != len(names):
            raise InputValidationError(f"{len(means)} mean(s) recorded for {len(names)} column(s)")

        if self.centered:
            for j, name in enumerate(names):
                column = values[:, j]
                scale = max(1.0, float(np.max(np.abs(column))))
                if not abs(float((column / scale).mean())) <= CENTERING_RTOL:
                    raise NotCenteredError(f"Column '{name}' is flagged centered but has mean {column.mean()!r}")

        values.setflags(write=False)
        object.__setattr__(self, "column_names", names)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "means", means)

    @classmethod
    def from_columns(cls, columns: Mapping[str, ArrayLike], *, centered: bool = False) -> "Dataset":
        """Build a dataset from a name -> vector mapping (insertion order kept)."""
        if not columns:
            raise EmptyDatasetError("Dataset has no columns")
        vectors = [np.asarray(v, dtype=np.float64).ravel() for v in columns.values()]
        lengths = {len(v) for v in vectors}
        if len(lengths) != 1:
            raise InputValidationError(f"Columns have differing lengths: {sorted(lengths)}")
        return cls(column_names=tuple(columns), values=np.column_stack(vectors), centered=centered)

    @property
    def n_rows(self) -> int:
        return int(self.values.shape[0])

    def index(self, name: str) -> int:
        try:
            return self.column_names.index(name)
        except ValueError:
            raise UnknownColumnError(name, list(self.column_names)) from None

    def column(self, name: str) -> NDArray[np.float64]:
        """Read-only view of one column."""
        return self.values[:, self.index(name)]

    def matrix(self, names: Sequence[str]) -> NDArray[np.float64]:
        """(n, len(names)) copy of the named columns, in the requested order."""
        idx = [self.index(name) for name in names]
        return np.array(self.values[:, idx], dtype=np.float64).reshape(self.n_rows, len(idx))

    def mean_of(self, name: str) -> float:
        return self.means[self.index(name)]

    def select(self, names: Sequence[str]) -> "Dataset":
        idx = [self.index(name) for name in names]
        return Dataset(
            column_names=tuple(names),
            values=self.values[:, idx],
            means=tuple(self.means[i] for i in idx),
            centered=self.centered,
        )

    def restore(self) -> "Dataset":
        """Undo centering by adding the recorded means back."""
        if not self.centered:
            return self
        return Dataset(column_names=self.column_names, values=self.values + np.asarray(self.means), centered=False)

    def __repr__(self) -> str:
        state = "centered" if self.centered else "raw"
        return f"Dataset({self.n_rows}x{len(self.column_names)} {state}: {', '.join(self.column_names)})"
