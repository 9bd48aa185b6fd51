"""Cocycles, coboundaries and cohomology of a crossed homomorphism.

``C^k`` has the lexicographic basis in ``(i_1, ..., i_k, output)``, the
row-major order of :class:`~crossed_leibniz.cochains.Cochain` coefficients.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from crossed_leibniz.cochains import Cochain, DgLaContext, differential_dH
from crossed_leibniz.linalg import (
    column_space_basis,
    kernel_basis,
    matmul,
    normalize,
    rank,
    rref,
    solve,
    zeros,
)

MAX_DEGREE = 3


class DegreeCapError(ValueError):
    pass


def _check_degree(ctx: DgLaContext, k: int, max_degree: int):
    if k < 0:
        raise ValueError("degree must be non-negative")
    if k > max_degree:
        raise DegreeCapError(f"degree {k} exceeds the cap {max_degree}")
    if max_degree > MAX_DEGREE and k > MAX_DEGREE:
        warnings.warn(
            f"degree {k}: C^{k + 1} has {ctx.m * ctx.n ** (k + 1)} coordinates",
            stacklevel=3)


def cochain_dim(ctx: DgLaContext, k: int) -> int:
    return ctx.m * ctx.n ** k if k >= 0 else 0


def differential_matrix(ctx: DgLaContext, k: int, route: str = "induced",
                        max_degree: int = MAX_DEGREE) -> np.ndarray:
    """Matrix of ``d_H: C^k -> C^(k+1)``; column ``j`` is ``d_H`` of basis cochain ``j``."""
    if ctx.twist is None:
        raise ValueError("cohomology needs a context twisted by a crossed homomorphism")
    _check_degree(ctx, k, max_degree)
    rows, cols = cochain_dim(ctx, k + 1), cochain_dim(ctx, k)
    mat = zeros(rows, cols)
    if cols:
        big = ctx if ctx.max_arity >= k + 1 else DgLaContext(ctx.rep, ctx.twist, k + 1)
        for j in range(cols):
            e = Cochain.basis(k, ctx.n, ctx.m, j)
            mat[:, j] = differential_dH(e, big, route=route).flat()
    return mat


@dataclass
class CohomologyReport:
    degree: int
    dim_C: int
    dim_Z: int
    dim_B: int
    cocycle_basis: list = field(default_factory=list)
    coboundary_basis: list = field(default_factory=list)
    coboundary_preimages: list = field(default_factory=list)
    representatives: list = field(default_factory=list)

    @property
    def dim_H(self) -> int:
        return self.dim_Z - self.dim_B

    def to_json(self, encode_cochain) -> dict:
        return {
            "degree": self.degree,
            "dimC": self.dim_C,
            "dimZ": self.dim_Z,
            "dimB": self.dim_B,
            "dimH": self.dim_H,
            "representatives": [encode_cochain(c) for c in self.representatives],
        }


def _reduce(v, red_rows, pivots):
    v = [Fraction(x) for x in v]
    for row, pc in zip(red_rows, pivots):
        if v[pc] != 0:
            f = v[pc]
            v = [a - f * b for a, b in zip(v, row)]
    return np.array(v, dtype=object)


@dataclass(frozen=True)
class CochainComplexSlice:
    """``C^(k-1) -> C^k -> C^(k+1)`` around degree ``k``; the composite is checked to vanish."""

    ctx: DgLaContext
    degree: int
    d_prev: np.ndarray
    d_curr: np.ndarray

    def __post_init__(self):
        if self.d_curr.shape[0] and self.d_prev.shape[1]:
            prod = matmul(self.d_curr, self.d_prev)
            if any(v != 0 for v in prod.flat):
                raise AssertionError(f"d_H o d_H != 0 at degree {self.degree}")


def complex_slice(ctx: DgLaContext, k: int, max_degree: int = MAX_DEGREE) -> CochainComplexSlice:
    d_curr = differential_matrix(ctx, k, max_degree=max_degree)
    if k >= 1:
        d_prev = differential_matrix(ctx, k - 1, max_degree=max_degree)
    else:
        d_prev = zeros(cochain_dim(ctx, k), 0)
    return CochainComplexSlice(ctx, k, d_prev, d_curr)


def cohomology(ctx: DgLaContext, k: int, max_degree: int = MAX_DEGREE) -> CohomologyReport:
    sl = complex_slice(ctx, k, max_degree)
    d_prev, d_curr = sl.d_prev, sl.d_curr
    size = cochain_dim(ctx, k)

    zs = kernel_basis(d_curr) if size else []
    bs, piv_cols = column_space_basis(d_prev)
    pre_dim = cochain_dim(ctx, k - 1)
    preimages = []
    for c in piv_cols:
        e = zeros(pre_dim)
        e[c] = Fraction(1)
        preimages.append(Cochain.from_flat(e, k - 1, ctx.n, ctx.m))

    def as_cochain(v):
        return Cochain.from_flat(v, k, ctx.n, ctx.m)

    reps = []
    if bs:
        b_rows, b_piv = rref(np.array([list(b) for b in bs], dtype=object))
    else:
        b_rows, b_piv = [], []
    span_rows, span_piv = list(b_rows), list(b_piv)
    for z in zs:
        rem = _reduce(z, span_rows, span_piv)
        if all(x == 0 for x in rem):
            continue
        reps.append(as_cochain(normalize(_reduce(z, b_rows, b_piv))))
        stacked = np.array(span_rows + [list(rem)], dtype=object)
        span_rows, span_piv = rref(stacked)
    report = CohomologyReport(
        degree=k,
        dim_C=size,
        dim_Z=size - rank(d_curr),
        dim_B=len(bs),
        cocycle_basis=[as_cochain(z) for z in zs],
        coboundary_basis=[as_cochain(b) for b in bs],
        coboundary_preimages=preimages,
        representatives=reps,
    )
    if len(reps) != report.dim_H:
        raise AssertionError("representative count does not match dim H")
    return report


def is_coboundary(ctx: DgLaContext, c: Cochain, max_degree: int = MAX_DEGREE) -> bool:
    """Does ``c`` lie in ``B^k_H``?  Decided by comparing ranks, not by solving."""
    k = c.arity
    if k == 0:
        return c.is_zero()
    d_prev = differential_matrix(ctx, k - 1, max_degree=max_degree)
    aug = zeros(d_prev.shape[0], d_prev.shape[1] + 1)
    aug[:, :-1] = d_prev
    aug[:, -1] = c.flat()
    return rank(aug) == rank(d_prev)


def solve_coboundary(ctx: DgLaContext, c: Cochain, max_degree: int = MAX_DEGREE):
    """Some ``b`` with ``d_H(b) = c``, or ``None``."""
    k = c.arity
    if k == 0:
        return None
    d_prev = differential_matrix(ctx, k - 1, max_degree=max_degree)
    x = solve(d_prev, c.flat())
    if x is None:
        return None
    return Cochain.from_flat(x, k - 1, ctx.n, ctx.m)
