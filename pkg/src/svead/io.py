"""CSV ingestion and emission.

All files are UTF-8, comma-delimited, ``\\n``-terminated, with ``.`` as the
decimal point. Row and column numbers in error messages are 1-based; rows
count physical lines, so a header line is row 1.
"""

from __future__ import annotations

import csv
import io
import math
import sys
from pathlib import Path
from typing import Iterable, Sequence, TextIO

import numpy as np

from .core import Dataset, ScoreVector, SVEADError

SCORE_FORMAT = "%.12g"


class IngestionError(SVEADError, ValueError):
    """A CSV file could not be turned into a Dataset."""


class EmptyFileError(IngestionError):
    pass


class RaggedRowError(IngestionError):
    pass


class NonNumericError(IngestionError):
    pass


class NonFiniteError(IngestionError):
    pass


class LabelError(IngestionError):
    pass


def _resolve_label_column(column, width: int, header: list[str] | None) -> int | None:
    if column is None:
        return None
    if isinstance(column, str):
        if column == "last":
            return width - 1
        if column == "first":
            return 0
        if header is not None and column in header:
            return header.index(column)
        try:
            column = int(column)
        except ValueError:
            raise IngestionError(f"label column {column!r} not found") from None
    col = int(column)
    if col < 0:
        col += width
    if not 0 <= col < width:
        raise IngestionError(f"label column {column} out of range for {width} columns")
    return col


def load_csv(path: str | Path, has_header: bool = False, label_column=None, name: str | None = None) -> Dataset:
    """Read a numeric CSV into a Dataset.

    Args:
        path: File to read.
        has_header: Whether the first line holds column names.
        label_column: None for unlabeled data, ``"last"``/``"first"``, a
            0-based integer index (negative counts from the end), or a
            header name. The column must contain only 0 and 1.
        name: Dataset name; defaults to the file stem.
    """
    path = Path(path)
    with open(path, newline="", encoding="utf-8") as fh:
        rows = list(csv.reader(fh))

    header = None
    first_line = 1
    if has_header and rows:
        header = [h.strip() for h in rows[0]]
        rows = rows[1:]
        first_line = 2
    # keep physical line numbers while dropping blank lines
    numbered = [(first_line + i, r) for i, r in enumerate(rows) if r and any(c.strip() for c in r)]
    if not numbered:
        raise EmptyFileError(f"{path}: no data rows")

    width = len(header) if header is not None else len(numbered[0][1])
    values = np.empty((len(numbered), width))
    for k, (line, row) in enumerate(numbered):
        if len(row) != width:
            raise RaggedRowError(f"{path}: row {line} has {len(row)} columns, expected {width}")
        for j, cell in enumerate(row):
            try:
                v = float(cell)
            except ValueError:
                raise NonNumericError(f"{path}: row {line}, column {j + 1}: non-numeric value {cell.strip()!r}") from None
            if not math.isfinite(v):
                raise NonFiniteError(f"{path}: row {line}, column {j + 1}: non-finite value {cell.strip()!r}")
            values[k, j] = v

    col = _resolve_label_column(label_column, width, header)
    labels = None
    if col is not None:
        raw = values[:, col]
        bad = np.flatnonzero((raw != 0) & (raw != 1))
        if bad.size:
            line = numbered[bad[0]][0]
            raise LabelError(f"{path}: row {line}, column {col + 1}: label must be 0 or 1, got {raw[bad[0]]!r}")
        labels = raw.astype(np.int8)
        values = np.delete(values, col, axis=1)
    if values.shape[1] == 0:
        raise IngestionError(f"{path}: no feature columns")
    return Dataset(values, labels, name or path.stem)


def _open_out(path: str | Path | TextIO | None):
    if path is None or path == "-":
        return sys.stdout, False
    if isinstance(path, io.TextIOBase):
        return path, False
    try:
        return open(path, "w", newline="", encoding="utf-8"), True
    except OSError as exc:
        raise SVEADError(f"cannot write {path}: {exc.strerror}") from exc


def write_table(path, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    """Write rows with ``header`` in the package CSV dialect."""
    fh, close = _open_out(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(header)
        for row in rows:
            w.writerow([_fmt(v) for v in row])
        fh.flush()
    finally:
        if close:
            fh.close()


def _fmt(v) -> str:
    if isinstance(v, (float, np.floating)):
        return SCORE_FORMAT % v
    return str(v)


def write_scores(path, score_vector: ScoreVector, dataset: Dataset) -> None:
    """Write ``index,score,contributions[,label]``, one row per point in dataset order."""
    if len(score_vector) != dataset.n:
        raise ValueError(f"score vector has {len(score_vector)} entries, dataset has {dataset.n} points")
    header = ["index", "score", "contributions"]
    cols = [range(dataset.n), score_vector.scores.tolist(), score_vector.contributions.tolist()]
    if dataset.labels is not None:
        header.append("label")
        cols.append(dataset.labels.tolist())
    write_table(path, header, zip(*cols))


def read_scores(path: str | Path) -> dict[str, np.ndarray]:
    """Read a file produced by :func:`write_scores` back into columns."""
    with open(path, newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader)
        rows = list(reader)
    data = np.array(rows, dtype=np.float64).reshape(len(rows), len(header))
    out = {h: data[:, j] for j, h in enumerate(header)}
    for key in ("index", "contributions", "label"):
        if key in out:
            out[key] = out[key].astype(np.int64)
    return out


def write_dataset(path, dataset: Dataset) -> None:
    """Write features (and labels as the last column) with no header."""
    fh, close = _open_out(path)
    try:
        w = csv.writer(fh, lineterminator="\n")
        for i in range(dataset.n):
            row = [repr(float(v)) for v in dataset.features[i]]
            if dataset.labels is not None:
                row.append(str(int(dataset.labels[i])))
            w.writerow(row)
        fh.flush()
    finally:
        if close:
            fh.close()
