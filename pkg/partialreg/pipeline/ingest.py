"""CSV ingestion and emission, plus simulation config loading.

The CSV contract: UTF-8, a header row of unique column names, numeric
cells only, at least two data rows. Errors carry the 1-based file line
(the header is line 1) and the column name.
"""

import csv
import io
import json
import logging
import math
import re
import tomllib
from pathlib import Path
from typing import Any

import numpy as np

from partialreg.errors import CsvFormatError, InputValidationError
from partialreg.models.dataset import Dataset
from partialreg.models.simulation import SimulationSpec

logger = logging.getLogger(__name__)

MIN_DATA_ROWS = 2

# decimal or exponent notation; inf and nan are matched so they can be reported as non-finite
NUMBER = re.compile(r"[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?|inf(?:inity)?|nan)", re.IGNORECASE | re.ASCII)


def _decode(payload: bytes) -> str:
    try:
        return payload.decode("utf-8-sig")
    except UnicodeDecodeError as e:
        line = payload.count(b"\n", 0, e.start) + 1
        raise CsvFormatError(f"invalid UTF-8 byte at offset {e.start}", row=line) from None


def _parse_header(header: list[str]) -> list[str]:
    names: list[str] = []
    for position, raw in enumerate(header, start=1):
        name = raw.strip()
        if not name:
            raise CsvFormatError(f"header cell {position} is empty", row=1)
        if name in names:
            raise CsvFormatError("duplicate header", row=1, column=name)
        names.append(name)
    return names


def _parse_cell(cell: str, line: int, column: str) -> float:
    text = cell.strip()
    if not NUMBER.fullmatch(text):
        raise CsvFormatError(f"non-numeric value {cell!r}", row=line, column=column)
    value = float(text)
    if not math.isfinite(value):
        raise CsvFormatError(f"non-finite value {cell!r}", row=line, column=column)
    return value


def ingest_csv(path: str | Path) -> Dataset:
    """Parse a CSV file into an uncentered Dataset."""
    path = Path(path)
    try:
        payload = path.read_bytes()
    except OSError as e:
        raise InputValidationError(f"Cannot read {path}: {e.strerror}") from None

    reader = csv.reader(io.StringIO(_decode(payload), newline=""))
    header = next(reader, None)
    if header is None or not any(cell.strip() for cell in header):
        raise CsvFormatError("file is empty or has no header", row=1)
    names = _parse_header(header)

    rows: list[list[float]] = []
    for record in reader:
        line = reader.line_num
        if not record or all(not cell.strip() for cell in record):
            continue
        if len(record) != len(names):
            raise CsvFormatError(f"expected {len(names)} field(s), got {len(record)}", row=line)
        rows.append([_parse_cell(cell, line, name) for cell, name in zip(record, names, strict=True)])

    if len(rows) < MIN_DATA_ROWS:
        raise CsvFormatError(f"need at least {MIN_DATA_ROWS} data rows, got {len(rows)}", row=reader.line_num)

    logger.info("Ingested %s: %d row(s), %d column(s)", path, len(rows), len(names))
    return Dataset(column_names=tuple(names), values=np.array(rows, dtype=np.float64))


def write_csv(dataset: Dataset, path: str | Path) -> None:
    """Write ``dataset`` in the ingestion format; floats use repr so they read back identically."""
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(dataset.column_names)
    for row in dataset.values:
        writer.writerow([repr(float(v)) for v in row])
    Path(path).write_text(buffer.getvalue(), encoding="utf-8")
    logger.info("Wrote %d row(s) to %s", dataset.n_rows, path)


def _read_config(path: Path) -> dict[str, Any]:
    suffix = path.suffix.lower()
    try:
        if suffix == ".toml":
            with path.open("rb") as f:
                return tomllib.load(f)
        if suffix == ".json":
            payload: dict[str, Any] = json.loads(path.read_text(encoding="utf-8"))
            return payload
    except OSError as e:
        raise InputValidationError(f"Cannot read {path}: {e.strerror}") from None
    except (tomllib.TOMLDecodeError, json.JSONDecodeError) as e:
        raise InputValidationError(f"Cannot parse {path}: {e}") from None
    raise InputValidationError(f"Unsupported simulation config format '{suffix}' (use .toml or .json)")


def load_simulation_spec(path: str | Path) -> SimulationSpec:
    """Load a SimulationSpec from TOML or JSON (chosen by file suffix)."""
    path = Path(path)
    payload = _read_config(path)
    # a [simulation] table is accepted as the root
    if set(payload) == {"simulation"} and isinstance(payload["simulation"], dict):
        payload = payload["simulation"]
    spec = SimulationSpec.model_validate(payload)
    logger.debug("Loaded simulation spec from %s: k=%d, n=%d, seed=%d", path, spec.k, spec.n, spec.seed)
    return spec
