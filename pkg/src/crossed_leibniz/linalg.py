"""Exact rational scalars and dense linear algebra over Q.

Matrices are 2-D numpy arrays of dtype ``object`` holding
:class:`fractions.Fraction` entries.  Nothing in here ever rounds.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(value) -> Fraction:
    """Read ``"p/q"``, ``"p"``, an int or a Fraction.  Floats are refused."""
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        if not text:
            raise ValueError("empty scalar string")
        if any(ch in text for ch in ".eE"):
            raise ValueError(f"not an exact rational: {value!r}")
        return Fraction(text)
    raise TypeError(f"cannot interpret {value!r} as an exact scalar")


def format_scalar(value) -> str:
    return str(Fraction(value))


def zeros(*shape) -> np.ndarray:
    out = np.empty(shape, dtype=object)
    out.fill(ZERO)
    return out


def identity(n: int) -> np.ndarray:
    out = zeros(n, n)
    for i in range(n):
        out[i, i] = ONE
    return out


def as_matrix(rows, cols: Optional[int] = None) -> np.ndarray:
    """Coerce nested sequences (or an array) into an exact object matrix.

    ``cols`` is needed only to shape a matrix with zero rows.
    """
    if isinstance(rows, np.ndarray) and rows.dtype == object and rows.ndim == 2:
        return np.vectorize(parse_scalar, otypes=[object])(rows) if rows.size else rows.copy()
    rows = list(rows)
    if not rows:
        return zeros(0, cols or 0)
    data = [[parse_scalar(v) for v in row] for row in rows]
    width = len(data[0])
    if any(len(r) != width for r in data):
        raise ValueError("ragged matrix")
    if cols is not None and width != cols:
        raise ValueError(f"expected {cols} columns, got {width}")
    out = zeros(len(data), width)
    for i, r in enumerate(data):
        for j, v in enumerate(r):
            out[i, j] = v
    return out


def as_vector(values: Iterable) -> np.ndarray:
    vals = [parse_scalar(v) for v in values]
    out = zeros(len(vals))
    for i, v in enumerate(vals):
        out[i] = v
    return out


def matmul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    if a.shape[1] == 0:
        return zeros(a.shape[0], *b.shape[1:])
    return np.dot(a, b)


def is_zero(arr) -> bool:
    return all(v == 0 for v in np.asarray(arr, dtype=object).flat)


def rref(m) -> tuple[list[list[Fraction]], list[int]]:
    """Reduced row echelon form by exact Gauss-Jordan elimination.

    Returns the nonzero reduced rows and the pivot column of each.
    """
    m = np.asarray(m, dtype=object)
    nrows, ncols = m.shape
    rows = [[Fraction(v) for v in m[i]] for i in range(nrows)]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((i for i in range(r, nrows) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        prow = rows[r]
        for i in range(nrows):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


def rank(m) -> int:
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return 0
    return len(rref(m)[1])


def kernel_basis(m) -> list[np.ndarray]:
    """Basis of the null space, one vector per free column (that entry = 1)."""
    m = np.asarray(m, dtype=object)
    ncols = m.shape[1]
    if m.shape[0] == 0:
        red, pivots = [], []
    else:
        red, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = zeros(ncols)
        v[free] = ONE
        for row, pc in zip(red, pivots):
            v[pc] = -row[free]
        basis.append(v)
    return basis


def solve(m, b) -> Optional[np.ndarray]:
    """Some x with m @ x == b, or None when the system is inconsistent."""
    m = np.asarray(m, dtype=object)
    b = as_vector(b)
    nrows, ncols = m.shape
    if len(b) != nrows:
        raise ValueError(f"right-hand side has length {len(b)}, expected {nrows}")
    if nrows == 0:
        return zeros(ncols)
    aug = zeros(nrows, ncols + 1)
    aug[:, :ncols] = m
    aug[:, ncols] = b
    red, pivots = rref(aug)
    if pivots and pivots[-1] == ncols:
        return None
    x = zeros(ncols)
    for row, pc in zip(red, pivots):
        x[pc] = row[ncols]
    return x


def column_space_basis(m) -> tuple[list[np.ndarray], list[int]]:
    """Independent columns of ``m`` (the pivot columns) and their indices."""
    m = np.asarray(m, dtype=object)
    if m.size == 0:
        return [], []
    _, pivots = rref(m)
    return [m[:, c].copy() for c in pivots], pivots


def in_span(vectors: Sequence[np.ndarray], v, length: int) -> bool:
    if not vectors:
        return is_zero(v)
    stacked = zeros(length, len(vectors))
    for j, col in enumerate(vectors):
        stacked[:, j] = col
    return solve(stacked, v) is not None


def normalize(v: np.ndarray) -> np.ndarray:
    """Scale so the first nonzero coordinate is 1."""
    for x in v:
        if x != 0:
            return np.array([Fraction(y) / x for y in v], dtype=object)
    return v.copy()
