"""CSV ingestion and matrix/CSV artifacts.

Input CSV: comma separated, UTF-8, optional header row, plain decimal
numbers only (no thousands separators, no missing cells). Row and column
numbers in error messages are 1-based and count the header line.
"""

from __future__ import annotations

import csv
import json
import logging
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Sequence

import numpy as np

from .correlation import DataMatrix
from .errors import CSVFormatError, DataError, ModelFormatError, NonNumericCellError

logger = logging.getLogger(__name__)

_NUMBER = re.compile(r"[+-]?(?:\d+(?:\.\d*)?|\.\d+)(?:[eE][+-]?\d+)?")


@dataclass(frozen=True)
class Dataset:
    column_names: tuple
    data: DataMatrix
    source_path: str = ""

    def __post_init__(self):
        names = tuple(str(c) for c in self.column_names)
        if len(names) != self.data.m:
            raise DataError(f"{len(names)} column names for {self.data.m} columns")
        if any(not c.strip() for c in names):
            raise DataError("column names must be non-empty")
        dupes = sorted({c for c in names if names.count(c) > 1})
        if dupes:
            raise DataError(f"duplicate column names: {', '.join(dupes)}")
        object.__setattr__(self, "column_names", names)


def default_names(m: int) -> list[str]:
    return [f"c{j + 1}" for j in range(m)]


def _parse_cell(cell: str, row: int, col: int, name: str) -> float:
    text = cell.strip()
    if not text:
        raise CSVFormatError(f"empty cell at row {row}, column {col} ({name})", row, col)
    if not _NUMBER.fullmatch(text):
        raise NonNumericCellError(
            f"non-numeric cell {cell!r} at row {row}, column {col} ({name})", row, col
        )
    value = float(text)
    if not np.isfinite(value):
        raise NonNumericCellError(
            f"cell {cell!r} at row {row}, column {col} ({name}) overflows", row, col
        )
    return value


def ingest_csv(path, has_header: bool = True) -> Dataset:
    """Read a numeric CSV table into a :class:`Dataset`.

    Headerless files get the column names ``c1 ... cm``. Constant columns are
    accepted here with a warning; analysis rejects them.

    Raises:
        CSVFormatError: malformed rows or empty cells, with their location.
        NonNumericCellError: a cell that is not a decimal number.
        DataError: fewer than 2 rows or columns, or bad column names.
    """
    path = Path(path)
    try:
        with path.open(newline="", encoding="utf-8-sig") as fh:
            rows = [(i + 1, r) for i, r in enumerate(csv.reader(fh, strict=True)) if r]
    except csv.Error as exc:
        raise CSVFormatError(f"{path}: {exc}") from exc
    except UnicodeDecodeError as exc:
        raise CSVFormatError(f"{path}: not valid UTF-8 ({exc.reason})") from exc

    if not rows:
        raise DataError(f"{path}: no data")
    if has_header:
        _, header = rows[0]
        names = [h.strip() for h in header]
        rows = rows[1:]
    else:
        names = default_names(len(rows[0][1]))

    width = len(names)
    values = []
    for line, cells in rows:
        if len(cells) != width:
            raise CSVFormatError(
                f"{path}: row {line} has {len(cells)} cells, expected {width}", row=line
            )
        values.append([_parse_cell(c, line, j + 1, names[j]) for j, c in enumerate(cells)])

    if len(values) < 2:
        raise DataError(f"{path}: need at least 2 data rows, got {len(values)}")
    if width < 2:
        raise DataError(f"{path}: need at least 2 columns, got {width}")

    arr = np.array(values, dtype=np.float64)
    for j in np.flatnonzero(np.ptp(arr, axis=0) == 0):
        logger.warning("column %s is constant; analysis will reject it", names[j])
    return Dataset(tuple(names), DataMatrix(arr), str(path))


def format_float(x: float) -> str:
    # shortest round-tripping decimal representation
    return repr(float(x))


def write_matrix_csv(path, values, row_labels: Sequence[str], column_labels: Sequence[str], corner: str = ""):
    """Write a matrix with a header row and a leading label column."""
    values = np.asarray(values, dtype=np.float64)
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow([corner, *column_labels])
        for label, row in zip(row_labels, values):
            w.writerow([label, *map(format_float, row)])


def write_table_csv(path, values, column_labels: Sequence[str]):
    """Write observations with a header row and no label column."""
    values = np.asarray(values, dtype=np.float64)
    with Path(path).open("w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(column_labels)
        w.writerows([format_float(v) for v in row] for row in values)


def read_matrix_csv(path):
    """Inverse of :func:`write_matrix_csv`: ``(row_labels, column_labels, values)``."""
    with Path(path).open(newline="", encoding="utf-8-sig") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if len(rows) < 2:
        raise ModelFormatError(f"{path}: matrix CSV needs a header and at least one row")
    columns = rows[0][1:]
    labels, values = [], []
    for line, r in enumerate(rows[1:], start=2):
        if len(r) != len(columns) + 1:
            raise ModelFormatError(f"{path}: row {line} has {len(r) - 1} values, expected {len(columns)}")
        labels.append(r[0])
        try:
            values.append([_parse_cell(c, line, j + 2, columns[j]) for j, c in enumerate(r[1:])])
        except CSVFormatError as exc:
            raise ModelFormatError(f"{path}: {exc}") from exc
    return labels, columns, np.array(values, dtype=np.float64)


def read_loadings(path):
    """Load a loadings artifact written by ``analyze``.

    Accepts either the JSON report (its ``loadings`` entry is used) or a
    loadings CSV export.

    Returns:
        ``(variable_names, factor_names, loadings)``.

    Raises:
        ModelFormatError: if the file does not hold a loadings matrix.
    """
    path = Path(path)
    if path.suffix.lower() == ".json":
        try:
            doc = json.loads(path.read_text(encoding="utf-8"))
            block = doc["loadings"]
            rows, cols = list(block["rows"]), list(block["columns"])
            values = np.array(block["values"], dtype=np.float64)
        except (OSError, ValueError, KeyError, TypeError) as exc:
            raise ModelFormatError(f"{path}: not a loadings report ({exc})") from exc
    else:
        rows, cols, values = read_matrix_csv(path)
    if values.ndim != 2 or values.shape != (len(rows), len(cols)) or values.size == 0:
        raise ModelFormatError(f"{path}: loadings shape does not match its labels")
    if not np.isfinite(values).all():
        raise ModelFormatError(f"{path}: loadings contain non-finite values")
    return [str(r) for r in rows], [str(c) for c in cols], values
