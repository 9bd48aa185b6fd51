"""Cochains, the Balavoine bracket, the derived bracket and the differentials.

A cochain of arity ``n`` from a ``source_dim``-dimensional algebra to a
``target_dim``-dimensional space is a dense array ``coeffs`` of shape
``(source_dim,) * n + (target_dim,)``: ``coeffs[i_1, ..., i_n, k]`` is the
``k``-th coordinate of ``f(e_{i_1}, ..., e_{i_n})``.

Signs of the Balavoine bracket are taken from the graded degree
``arity - 1``; signs of the derived bracket from the arity itself, which
is the degree on the suspended complex.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Optional

import numpy as np

from crossed_leibniz.algebra import (
    LeibnizGRepresentation,
    semidirect_structure,
    twisted_action_matrices,
)
from crossed_leibniz.linalg import ZERO, as_matrix, zeros

MAX_ARITY = 4


class Cochain:
    __slots__ = ("coeffs", "source_dim")

    def __init__(self, coeffs, source_dim: int):
        coeffs = np.asarray(coeffs, dtype=object)
        if coeffs.ndim < 1 or any(s != source_dim for s in coeffs.shape[:-1]):
            raise ValueError(f"coefficient shape {coeffs.shape} does not fit source dim {source_dim}")
        self.coeffs = coeffs
        self.source_dim = source_dim

    @property
    def arity(self) -> int:
        return self.coeffs.ndim - 1

    @property
    def degree(self) -> int:
        """Graded degree in the Balavoine algebra."""
        return self.arity - 1

    @property
    def target_dim(self) -> int:
        return self.coeffs.shape[-1]

    @classmethod
    def zero(cls, arity: int, source_dim: int, target_dim: int) -> "Cochain":
        return cls(zeros(*((source_dim,) * arity + (target_dim,))), source_dim)

    @classmethod
    def from_matrix(cls, H) -> "Cochain":
        """Arity-1 cochain of the linear map whose matrix (target x source) is ``H``."""
        H = as_matrix(H)
        return cls(H.T.copy(), H.shape[1])

    @classmethod
    def from_vector(cls, v, source_dim: int) -> "Cochain":
        v = np.asarray(v, dtype=object)
        return cls(np.array([Fraction(x) for x in v], dtype=object).reshape(len(v)), source_dim)

    @classmethod
    def from_flat(cls, flat, arity: int, source_dim: int, target_dim: int) -> "Cochain":
        shape = (source_dim,) * arity + (target_dim,)
        arr = np.array([Fraction(x) for x in flat], dtype=object)
        return cls(arr.reshape(shape), source_dim)

    @classmethod
    def basis(cls, arity: int, source_dim: int, target_dim: int, index: int) -> "Cochain":
        c = cls.zero(arity, source_dim, target_dim)
        c.coeffs.reshape(-1)[index] = Fraction(1)
        return c

    def as_matrix(self) -> np.ndarray:
        if self.arity != 1:
            raise ValueError("only arity-1 cochains are linear maps")
        return self.coeffs.T.copy()

    def flat(self) -> np.ndarray:
        """Coordinates in the lexicographic ``(i_1, ..., i_n, k)`` basis."""
        return self.coeffs.reshape(-1).copy()

    def is_zero(self) -> bool:
        return all(v == 0 for v in self.coeffs.flat)

    def _check_like(self, other):
        if not isinstance(other, Cochain) or other.coeffs.shape != self.coeffs.shape \
                or other.source_dim != self.source_dim:
            raise ValueError("cochains of different shapes")

    def __add__(self, other):
        self._check_like(other)
        return Cochain(self.coeffs + other.coeffs, self.source_dim)

    def __sub__(self, other):
        self._check_like(other)
        return Cochain(self.coeffs - other.coeffs, self.source_dim)

    def __neg__(self):
        return Cochain(-self.coeffs, self.source_dim)

    def __mul__(self, scalar):
        return Cochain(self.coeffs * Fraction(scalar), self.source_dim)

    __rmul__ = __mul__

    def __eq__(self, other):
        return (isinstance(other, Cochain) and other.source_dim == self.source_dim
                and other.coeffs.shape == self.coeffs.shape
                and all(a == b for a, b in zip(self.coeffs.flat, other.coeffs.flat)))

    def __hash__(self):
        return hash((self.source_dim, self.coeffs.shape, tuple(self.coeffs.flat)))

    def __repr__(self):
        return f"Cochain(arity={self.arity}, {self.source_dim}->{self.target_dim})"


# -- shuffles -------------------------------------------------------------

def _signature(perm) -> int:
    inv = sum(1 for i in range(len(perm)) for j in range(i + 1, len(perm)) if perm[i] > perm[j])
    return -1 if inv % 2 else 1


@lru_cache(maxsize=None)
def shuffles(p: int, q: int) -> tuple:
    """All (p, q)-shuffles of ``0..p+q-1`` with their signatures.

    A shuffle is given by its images ``sigma[0..p+q-1]``, increasing on the
    first ``p`` and on the last ``q`` positions.  Lexicographic in the image
    set of the first block.
    """
    if p < 0 or q < 0:
        raise ValueError("shuffle block sizes must be non-negative")
    out = []
    for first in combinations(range(p + q), p):
        rest = tuple(i for i in range(p + q) if i not in first)
        perm = first + rest
        out.append((perm, _signature(perm)))
    return tuple(out)


# -- Balavoine bracket ----------------------------------------------------

def _check_endo(P: Cochain, Q: Cochain):
    for X in (P, Q):
        if X.source_dim != X.target_dim:
            raise ValueError("Balavoine bracket needs endomorphism cochains")
        if X.arity < 1:
            raise ValueError("Balavoine bracket is defined for arity >= 1 only")
    if P.source_dim != Q.source_dim:
        raise ValueError("cochains over different spaces")


def diamond_k(P: Cochain, Q: Cochain, k: int) -> Cochain:
    """``P <>_k Q``: insert ``Q`` into slot ``k`` (1-based), shuffling its leading arguments."""
    _check_endo(P, Q)
    p, q = P.degree, Q.degree
    if not 1 <= k <= p + 1:
        raise ValueError(f"slot {k} out of range 1..{p + 1}")
    # T axes: Q args (q+1), P args without slot k (p), out
    T = np.tensordot(Q.coeffs, P.coeffs, axes=([q + 1], [k - 1]))
    before = list(range(q + 1, q + k))
    after = list(range(q + k, q + p + 1))
    U = np.transpose(T, before + list(range(q + 1)) + after + [q + p + 1])
    n = p + q + 1
    acc = None
    for sigma, sign in shuffles(k - 1, q):
        axes = list(range(n + 1))
        for a, s in enumerate(sigma):
            axes[s] = a
        term = np.transpose(U, axes)
        term = term if sign > 0 else -term
        acc = term if acc is None else acc + term
    return Cochain(np.ascontiguousarray(acc), P.source_dim)


def diamond_bar(P: Cochain, Q: Cochain) -> Cochain:
    q = Q.degree
    acc = None
    for k in range(1, P.degree + 2):
        term = diamond_k(P, Q, k)
        if (k - 1) * q % 2:
            term = -term
        acc = term if acc is None else acc + term
    return acc


def balavoine_bracket(P: Cochain, Q: Cochain) -> Cochain:
    _check_endo(P, Q)
    left = diamond_bar(P, Q)
    right = diamond_bar(Q, P)
    return left + right if (P.degree * Q.degree) % 2 else left - right


# -- the dgLa of a Leibniz g-representation -------------------------------

class DgLaContext:
    """A Leibniz g-representation, optionally twisted by a crossed homomorphism.

    The twist is stored as its ``dim(h) x dim(g)`` matrix; whether it is a
    crossed homomorphism is checked by :mod:`crossed_leibniz.crossed`.
    """

    def __init__(self, rep: LeibnizGRepresentation, twist=None, max_arity: int = MAX_ARITY):
        self.rep = rep
        self.twist = None if twist is None else as_matrix(twist, cols=rep.g.dim)
        if self.twist is not None and self.twist.shape != (rep.h.dim, rep.g.dim):
            raise ValueError(f"twist must be {rep.h.dim}x{rep.g.dim}")
        self.max_arity = max_arity
        self._cache = {}

    @property
    def n(self) -> int:
        return self.rep.g.dim

    @property
    def m(self) -> int:
        return self.rep.h.dim

    def with_twist(self, H) -> "DgLaContext":
        return DgLaContext(self.rep, H, self.max_arity)

    def mu_h(self) -> Cochain:
        """The h-multiplication as an endomorphism cochain of ``g (+) h``."""
        if "mu_h" not in self._cache:
            n, m = self.n, self.m
            c = zeros(n + m, n + m, n + m)
            c[n:, n:, n:] = self.rep.h.structure
            self._cache["mu_h"] = Cochain(c, n + m)
        return self._cache["mu_h"]

    def mu_g_rho(self) -> Cochain:
        """``mu_g + rho^L + rho^R`` as an endomorphism cochain of ``g (+) h``."""
        if "pi" not in self._cache:
            r = self.rep
            c = semidirect_structure(r.g, _Abelian(r.h.dim), r.rhoL, r.rhoR)
            self._cache["pi"] = Cochain(c, self.n + self.m)
        return self._cache["pi"]

    def induced(self) -> tuple[np.ndarray, np.ndarray]:
        """(rho^L_H, rho^R_H) tensors of the twisted action."""
        if self.twist is None:
            return self.rep.rhoL, self.rep.rhoR
        if "induced" not in self._cache:
            self._cache["induced"] = twisted_action_matrices(self.rep, self.twist)
        return self._cache["induced"]


class _Abelian:
    def __init__(self, dim):
        self.dim = dim
        self.structure = zeros(dim, dim, dim)


def _check_source(f: Cochain, ctx: DgLaContext, out_arity: int):
    """Shapes must match; ``out_arity`` is the arity of the cochain about to be built."""
    if f.source_dim != ctx.n or f.target_dim != ctx.m:
        raise ValueError(
            f"cochain {f.source_dim}->{f.target_dim} does not match context {ctx.n}->{ctx.m}")
    if out_arity > ctx.max_arity:
        raise ValueError(f"arity {out_arity} exceeds the cap {ctx.max_arity}")


def lift_cochain(f: Cochain, ctx: DgLaContext) -> Cochain:
    """Horizontal lift: read the g-components of the arguments, land in the h-summand."""
    _check_source(f, ctx, f.arity)
    n, m = ctx.n, ctx.m
    N = n + m
    out = zeros(*((N,) * f.arity + (N,)))
    out[(slice(0, n),) * f.arity + (slice(n, N),)] = f.coeffs
    return Cochain(out, N)


def project_cochain(F: Cochain, ctx: DgLaContext) -> Cochain:
    """Restrict to g-arguments and take the h-component of the value."""
    n, N = ctx.n, ctx.n + ctx.m
    if F.source_dim != N:
        raise ValueError("not a cochain on g (+) h")
    block = F.coeffs[(slice(0, n),) * F.arity + (slice(n, N),)]
    return Cochain(np.ascontiguousarray(block), n)


def derived_bracket(f: Cochain, g2: Cochain, ctx: DgLaContext) -> Cochain:
    """``(-1)^(m-1) [[mu_h, f], g2]`` projected back to ``g^(m+n) -> h``.

    The sign is ``(-1)^(m-1)`` rather than ``(-1)^m``; see
    :func:`differential_d` for why.  A constant factor does not affect the
    graded Lie or dg identities.  Symmetry: ``[[f, g2]]^ = -(-1)^(mn) [[g2, f]]^``.
    """
    _check_source(f, ctx, f.arity + g2.arity - 1)
    _check_source(g2, ctx, g2.arity)
    if f.arity < 1 or g2.arity < 1:
        raise ValueError("the derived bracket is defined on arities >= 1")
    inner = balavoine_bracket(ctx.mu_h(), lift_cochain(f, ctx))
    outer = balavoine_bracket(inner, lift_cochain(g2, ctx))
    res = project_cochain(outer, ctx)
    return res if (f.arity - 1) % 2 == 0 else -res


# -- literal coboundary formulas ------------------------------------------

def _coboundary_parts(F: np.ndarray, n: int, cg: np.ndarray, RL, RR):
    """The three sums of the Loday-Pirashvili formula, before global signs.

    Returns ``(A, B, C)`` with
    ``A = sum_{i<=n} (-1)^(i+1) rhoL(x_i) f(.., x_i^, ..)``,
    ``B = rhoR(x_{n+1}) f(x_1..x_n)`` and
    ``C = sum_{i<j} (-1)^i f(.., x_i^, .., [x_i, x_j], ..)``.
    """
    d = cg.shape[0]
    m = F.shape[-1]
    shape = (d,) * (n + 1) + (m,)
    A = zeros(*shape)
    C = zeros(*shape)
    for i in range(1, n + 1):
        # T axes: (x_i, out, remaining n args)
        T = np.tensordot(RL, F, axes=([2], [n]))
        axes = []
        for r in range(n + 1):
            if r == i - 1:
                axes.append(0)
            elif r < i - 1:
                axes.append(2 + r)
            else:
                axes.append(1 + r)
        axes.append(1)
        term = np.transpose(T, axes)
        A = A + term if (i + 1) % 2 == 0 else A - term
    B = np.tensordot(F, RR, axes=([n], [2]))
    for i in range(1, n + 2):
        for j in range(i + 1, n + 2):
            # bracket sits at (0-based) slot j-2 of f
            T = np.tensordot(cg, F, axes=([2], [j - 2]))
            axes = [0] * (n + 1)
            axes[i - 1] = 0
            axes[j - 1] = 1
            nxt = 2
            for r in range(n + 1):
                if r in (i - 1, j - 1):
                    continue
                axes[r] = nxt
                nxt += 1
            axes.append(nxt)
            term = np.transpose(T, axes)
            C = C + term if i % 2 == 0 else C - term
    return A, B, C


def _literal_delta(F: np.ndarray, n: int, cg, RL, RR) -> np.ndarray:
    A, B, C = _coboundary_parts(F, n, cg, RL, RR)
    return A + B + C if (n + 1) % 2 == 0 else A - B + C


def _literal_d(F: np.ndarray, n: int, cg, RL, RR) -> np.ndarray:
    A, B, C = _coboundary_parts(F, n, cg, RL, RR)
    return A + C + B if (n + 1) % 2 == 0 else B - A - C


def delta_leibniz(f: Cochain, ctx) -> Cochain:
    """Loday-Pirashvili coboundary for the untwisted action of ``ctx``.

    ``ctx`` may be a :class:`DgLaContext` or a :class:`LeibnizGRepresentation`.
    At arity 0, ``(delta v)(x) = -rho^R(x) v``.
    """
    if isinstance(ctx, DgLaContext):
        _check_source(f, ctx, f.arity + 1)
    rep = ctx.rep if isinstance(ctx, DgLaContext) else ctx
    if f.source_dim != rep.g.dim or f.target_dim != rep.h.dim:
        raise ValueError("cochain does not match the representation")
    out = _literal_delta(f.coeffs, f.arity, rep.g.structure, rep.rhoL, rep.rhoR)
    return Cochain(out, f.source_dim)


def delta_of_action(f: Cochain, g_structure, rhoL, rhoR) -> Cochain:
    """Loday-Pirashvili coboundary for an explicit action tensor pair."""
    return Cochain(_literal_delta(f.coeffs, f.arity, g_structure, rhoL, rhoR), f.source_dim)


def _require_twist(ctx: DgLaContext):
    if ctx.twist is None:
        raise ValueError("this operation needs a context twisted by a crossed homomorphism")


def delta_leib_twisted(f: Cochain, ctx: DgLaContext, route: str = "literal") -> Cochain:
    """Coboundary of the cohomology of a crossed homomorphism ``H``.

    ``route="literal"`` adds the ``[H(x_i), f(..)]`` and ``[f(..), H(x_{n+1})]``
    terms to the untwisted coboundary; ``route="induced"`` is the plain
    coboundary of the twisted action ``(rho^L_H, rho^R_H)``.
    """
    _require_twist(ctx)
    _check_source(f, ctx, f.arity + 1)
    rep, H = ctx.rep, ctx.twist
    n = f.arity
    if route == "induced":
        L, R = ctx.induced()
        return delta_of_action(f, rep.g.structure, L, R)
    if route != "literal":
        raise ValueError(f"unknown route {route!r}")
    F = f.coeffs
    base = _literal_delta(F, n, rep.g.structure, rep.rhoL, rep.rhoR)
    ch = rep.h.structure
    # [u, f(..)] as an operator in u: G[args.., p, r] = sum_q f[args.., q] c_h[p, q, r]
    G = np.tensordot(F, ch, axes=([n], [1]))
    extra = zeros(*base.shape)
    for i in range(1, n + 1):
        # contract u = H(x_i): T axes (remaining args.., r, x_i)
        T = np.tensordot(G, H, axes=([n], [0]))
        axes = []
        for r in range(n + 1):
            if r == i - 1:
                axes.append(n + 1)
            elif r < i - 1:
                axes.append(r)
            else:
                axes.append(r - 1)
        axes.append(n)
        term = np.transpose(T, axes)
        extra = extra + term if (i + 1) % 2 == 0 else extra - term
    # [f(x_1..x_n), H(x_{n+1})]
    K = np.tensordot(F, ch, axes=([n], [0]))            # args.., q, r
    T = np.tensordot(K, H, axes=([n], [0]))             # args.., r, x_{n+1}
    axes = list(range(n)) + [n + 1, n]
    term = np.transpose(T, axes)
    extra = extra + term if (n + 1) % 2 == 0 else extra - term
    return Cochain(base + extra, f.source_dim)


def differential_d(f: Cochain, ctx: DgLaContext, route: str = "literal") -> Cochain:
    """Differential of the untwisted dgLa.

    ``route="literal"`` is the closed formula
    ``(-1)^(n+1) (sum rhoL-terms + sum bracket-terms) + rhoR(x_{n+1}) f(x_1..x_n)``,
    which equals ``(-1)^(n-1) delta``; at arity 0 it gives ``(dv)(x) = rhoR(x) v``.
    ``route="bracket"`` computes ``[[mu_g + rho^L + rho^R, lift f]]`` and projects;
    it needs arity >= 1 because the insertion formula has no 0-ary case.
    The two agree, which is also why the derived bracket carries the sign
    ``(-1)^(m-1)``: with this ``d``, only that sign makes ``dH + 1/2 [[H, H]]^``
    vanish on crossed homomorphisms.
    """
    _check_source(f, ctx, f.arity + 1)
    if route == "literal":
        rep = ctx.rep
        return Cochain(_literal_d(f.coeffs, f.arity, rep.g.structure, rep.rhoL, rep.rhoR),
                       f.source_dim)
    if route == "bracket":
        if f.arity < 1:
            raise ValueError("the bracket route needs arity >= 1")
        F = balavoine_bracket(ctx.mu_g_rho(), lift_cochain(f, ctx))
        return project_cochain(F, ctx)
    raise ValueError(f"unknown route {route!r}")


def differential_dH(f: Cochain, ctx: DgLaContext, route: Optional[str] = None) -> Cochain:
    """Twisted differential ``d_H = d + [[H, -]]^``.

    ``route="bracket"`` uses the derived bracket (arity >= 1);
    ``route="induced"`` applies the literal ``d`` formula to the twisted
    action, which is also how arity 0 is handled.  ``None`` picks
    ``"bracket"`` when defined.
    """
    _require_twist(ctx)
    _check_source(f, ctx, f.arity + 1)
    if route is None:
        route = "bracket" if f.arity >= 1 else "induced"
    if route == "bracket":
        if f.arity < 1:
            raise ValueError("the bracket route needs arity >= 1")
        H = Cochain.from_matrix(ctx.twist)
        return differential_d(f, ctx) + derived_bracket(H, f, ctx)
    if route == "induced":
        L, R = ctx.induced()
        return Cochain(_literal_d(f.coeffs, f.arity, ctx.rep.g.structure, L, R), f.source_dim)
    raise ValueError(f"unknown route {route!r}")
