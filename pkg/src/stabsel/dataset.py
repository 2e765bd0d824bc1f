"""Observation/response containers and CSV ingestion."""

from __future__ import annotations

import csv
import os
from dataclasses import dataclass, field

import numpy as np


class DataError(ValueError):
    """Raised for malformed input data or invalid restrictions."""


@dataclass(frozen=True)
class Dataset:
    """N observations of D covariates plus a response.

    ``col_index`` holds the original covariate index of every column, so a
    restricted dataset can report selections in the parent's index space.
    """

    X: np.ndarray
    Y: np.ndarray
    covariate_names: tuple = None
    col_index: np.ndarray = None

    def __post_init__(self):
        X = np.array(self.X, dtype=float)
        Y = np.array(self.Y, dtype=float).ravel()
        if X.ndim != 2:
            raise DataError(f"X must be 2-dimensional, got shape {X.shape}")
        n, d = X.shape
        if n < 1 or d < 1:
            raise DataError(f"need N >= 1 and D >= 1, got N={n}, D={d}")
        if Y.shape[0] != n:
            raise DataError(f"Y has {Y.shape[0]} entries but X has {n} rows")
        if not (np.all(np.isfinite(X)) and np.all(np.isfinite(Y))):
            raise DataError("data contains NaN or infinite values")
        names = self.covariate_names
        if names is None:
            names = tuple(f"x{j}" for j in range(d))
        names = tuple(str(s) for s in names)
        if len(names) != d:
            raise DataError(f"{len(names)} covariate names for {d} columns")
        idx = self.col_index
        idx = np.arange(d) if idx is None else np.asarray(idx, dtype=np.intp)
        if idx.shape != (d,):
            raise DataError("col_index must have one entry per column")
        X.flags.writeable = False
        Y.flags.writeable = False
        idx.flags.writeable = False
        object.__setattr__(self, "X", X)
        object.__setattr__(self, "Y", Y)
        object.__setattr__(self, "covariate_names", names)
        object.__setattr__(self, "col_index", idx)

    @property
    def N(self) -> int:
        return self.X.shape[0]

    @property
    def D(self) -> int:
        return self.X.shape[1]


@dataclass(frozen=True)
class GroundTruth:
    """True coefficient vector of a synthetic linear model."""

    beta: np.ndarray
    informative: frozenset = field(default=None)

    def __post_init__(self):
        beta = np.array(self.beta, dtype=float).ravel()
        support = frozenset(int(i) for i in np.flatnonzero(beta))
        if self.informative is not None and frozenset(self.informative) != support:
            raise DataError("informative set must equal the support of beta")
        beta.flags.writeable = False
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "informative", support)


def _check_indices(idx, bound, what):
    arr = np.asarray(list(idx) if not isinstance(idx, np.ndarray) else idx)
    if arr.size == 0:
        raise DataError(f"empty {what} index set")
    if arr.dtype.kind not in "iu":
        if not np.all(np.mod(arr, 1) == 0):
            raise DataError(f"{what} indices must be integers")
        arr = arr.astype(np.intp)
    if arr.min() < 0 or arr.max() >= bound:
        raise DataError(f"{what} index out of range [0, {bound})")
    if np.unique(arr).size != arr.size:
        raise DataError(f"duplicate {what} index")
    return arr.astype(np.intp)


def restrict(ds: Dataset, rows, cols) -> Dataset:
    """Sub-dataset on the given observation rows and covariate columns.

    Indices are local to ``ds``; the result keeps the original covariate
    indices in ``col_index``.
    """
    r = _check_indices(rows, ds.N, "row")
    c = _check_indices(cols, ds.D, "column")
    return Dataset(
        X=ds.X[np.ix_(r, c)],
        Y=ds.Y[r],
        covariate_names=tuple(ds.covariate_names[j] for j in c),
        col_index=ds.col_index[c],
    )


def _is_number(s):
    try:
        float(s)
    except ValueError:
        return False
    return True


def load_csv(path, response_column) -> Dataset:
    """Read a comma-separated numeric table.

    A header row is assumed when any cell of the first row is non-numeric.
    ``response_column`` is a header name or a zero-based column index; all
    other columns become covariates in file order.
    """
    if not os.path.isfile(path):
        raise DataError(f"no such file: {path}")
    with open(path, newline="") as fh:
        rows = [r for r in csv.reader(fh) if r and any(c.strip() for c in r)]
    if not rows:
        raise DataError(f"{path}: empty file")

    header = None
    if not all(_is_number(c) for c in rows[0]):
        header = [c.strip() for c in rows[0]]
        rows = rows[1:]
    width = len(header) if header is not None else len(rows[0]) if rows else 0
    if not rows:
        raise DataError(f"{path}: no data rows")

    values = np.empty((len(rows), width))
    first_line = 2 if header is not None else 1
    for i, row in enumerate(rows):
        if len(row) != width:
            raise DataError(
                f"{path}: line {i + first_line} has {len(row)} fields, expected {width}"
            )
        for j, cell in enumerate(row):
            try:
                values[i, j] = float(cell)
            except ValueError:
                raise DataError(
                    f"{path}: non-numeric cell {cell!r} at row {i + first_line}, "
                    f"column {j + 1}"
                ) from None

    if header is None:
        header = [f"x{j}" for j in range(width)]
    if isinstance(response_column, (int, np.integer)):
        ycol = int(response_column)
        if not 0 <= ycol < width:
            raise DataError(f"response column index {ycol} out of range")
    elif response_column in header:
        ycol = header.index(response_column)
    elif str(response_column).lstrip("-").isdigit() and 0 <= int(response_column) < width:
        ycol = int(response_column)
    else:
        raise DataError(f"response column {response_column!r} not found")

    xcols = [j for j in range(width) if j != ycol]
    if not xcols:
        raise DataError("no covariate columns left after removing the response")
    return Dataset(
        X=values[:, xcols],
        Y=values[:, ycol],
        covariate_names=tuple(header[j] for j in xcols),
    )


def write_csv(ds: Dataset, path, response_name: str = "y") -> None:
    """Write covariates then the response, with a header, at full precision."""
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(list(ds.covariate_names) + [response_name])
        for xrow, y in zip(ds.X, ds.Y):
            w.writerow([repr(float(v)) for v in xrow] + [repr(float(y))])
