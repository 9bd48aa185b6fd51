"""Leibniz algebras, representations and Leibniz g-representations.

Conventions shared by the whole package:

* ``structure[i, j, k]`` is the coefficient of ``e_k`` in ``[e_i, e_j]``.
* ``rhoL[a]`` is the matrix of ``rho^L(e_a)`` acting on coordinate
  columns of the target space, so ``(rho^L(e_a) v)_r = sum_q rhoL[a][r, q] v_q``.
* On ``g (+) h`` the g-basis comes first, then the h-basis.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from crossed_leibniz.linalg import ZERO, as_matrix, is_zero, matmul, parse_scalar, zeros

MAX_TOTAL_DIM = 32


class DimensionCapError(ValueError):
    pass


class ConsistencyError(AssertionError):
    """Two independent computations of the same quantity disagreed."""


@dataclass(frozen=True)
class Failure:
    check: str
    indices: tuple
    lhs: tuple = ()
    rhs: tuple = ()


@dataclass
class Report:
    """Outcome of a validity check; ``ok`` iff no failure was recorded."""

    failures: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.failures

    def __bool__(self) -> bool:
        return self.ok

    def failed_checks(self) -> set:
        return {f.check for f in self.failures}

    def failure_indices(self, check: Optional[str] = None) -> set:
        return {f.indices for f in self.failures if check is None or f.check == check}

    def add(self, check, indices, lhs, rhs):
        self.failures.append(Failure(check, tuple(indices), _vec(lhs), _vec(rhs)))

    def extend(self, other: "Report"):
        self.failures.extend(other.failures)


def _vec(v) -> tuple:
    return tuple(Fraction(x) for x in np.asarray(v, dtype=object).flat)


def _structure_tensor(data, dim: int) -> np.ndarray:
    out = zeros(dim, dim, dim)
    arr = np.asarray(data, dtype=object)
    if arr.shape != (dim, dim, dim):
        raise ValueError(f"structure tensor must have shape {(dim,) * 3}, got {arr.shape}")
    for idx in np.ndindex(arr.shape):
        out[idx] = parse_scalar(arr[idx])
    return out


class LeibnizAlgebra:
    """An algebra given by structure constants; validity is checked separately."""

    def __init__(self, structure, basis: Optional[Sequence[str]] = None, dim: Optional[int] = None):
        if dim is None:
            dim = len(structure)
        self.dim = dim
        self.structure = _structure_tensor(structure, dim) if dim else zeros(0, 0, 0)
        if basis is None:
            basis = [f"e{i + 1}" for i in range(dim)]
        if len(basis) != dim:
            raise ValueError("one basis label per dimension required")
        self.basis = list(basis)

    @classmethod
    def abelian(cls, dim: int, basis=None) -> "LeibnizAlgebra":
        return cls(zeros(dim, dim, dim), basis, dim=dim)

    @classmethod
    def from_brackets(cls, dim: int, brackets: dict, basis=None) -> "LeibnizAlgebra":
        """``brackets`` maps 0-based ``(i, j)`` to a coordinate sequence of ``[e_i, e_j]``."""
        c = zeros(dim, dim, dim)
        for (i, j), value in brackets.items():
            for k, v in enumerate(value):
                c[i, j, k] = parse_scalar(v)
        return cls(c, basis, dim=dim)

    def bracket(self, x, y) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        if self.dim == 0:
            return zeros(0)
        return np.tensordot(np.tensordot(x, self.structure, axes=([0], [0])), y, axes=([0], [0]))

    def left_mult(self, x) -> np.ndarray:
        """Matrix of ``L_x = [x, -]``."""
        if self.dim == 0:
            return zeros(0, 0)
        return np.tensordot(np.asarray(x, dtype=object), self.structure, axes=([0], [0])).T.copy()

    def right_mult(self, x) -> np.ndarray:
        """Matrix of ``R_x = [-, x]``."""
        if self.dim == 0:
            return zeros(0, 0)
        return np.tensordot(self.structure, np.asarray(x, dtype=object), axes=([1], [0])).T.copy()

    def unit(self, i: int) -> np.ndarray:
        v = zeros(self.dim)
        v[i] = Fraction(1)
        return v

    def is_homomorphism(self, phi, target: Optional["LeibnizAlgebra"] = None) -> Report:
        """Check ``phi[x, y] = [phi x, phi y]`` on basis pairs; ``phi`` is a matrix."""
        target = target or self
        phi = as_matrix(phi)
        rep = Report()
        for i in range(self.dim):
            for j in range(self.dim):
                lhs = matmul(phi, self.structure[i, j])
                rhs = target.bracket(phi[:, i], phi[:, j])
                if not np.array_equal(lhs, rhs):
                    rep.add("homomorphism", (i, j), lhs, rhs)
        return rep

    def __eq__(self, other):
        return (isinstance(other, LeibnizAlgebra) and self.dim == other.dim
                and np.array_equal(self.structure, other.structure))

    def __repr__(self):
        return f"LeibnizAlgebra(dim={self.dim}, basis={self.basis})"


class ActionPair:
    """Left and right action operators of ``source`` on a space of ``target_dim``."""

    def __init__(self, source: LeibnizAlgebra, rhoL, rhoR, target_dim: Optional[int] = None):
        self.source = source
        if target_dim is None:
            target_dim = len(rhoL[0]) if len(rhoL) else 0
        self.target_dim = target_dim
        self.rhoL = self._stack(rhoL, "rhoL")
        self.rhoR = self._stack(rhoR, "rhoR")

    def _stack(self, mats, name) -> np.ndarray:
        n, m = self.source.dim, self.target_dim
        if len(mats) != n:
            raise ValueError(f"{name} needs one matrix per basis element of g ({n}), got {len(mats)}")
        out = zeros(n, m, m)
        for a, mat in enumerate(mats):
            mm = as_matrix(mat, cols=m) if m else zeros(0, 0)
            if mm.shape != (m, m):
                raise ValueError(f"{name}[{a}] must be {m}x{m}, got {mm.shape}")
            out[a] = mm
        return out

    @classmethod
    def zero(cls, source: LeibnizAlgebra, target_dim: int) -> "ActionPair":
        z = [zeros(target_dim, target_dim) for _ in range(source.dim)]
        return cls(source, z, z, target_dim)

    @classmethod
    def regular(cls, g: LeibnizAlgebra) -> "ActionPair":
        left = [g.left_mult(g.unit(a)) for a in range(g.dim)]
        right = [g.right_mult(g.unit(a)) for a in range(g.dim)]
        return cls(g, left, right, g.dim)

    def left(self, x) -> np.ndarray:
        """Matrix of ``rho^L(x)`` for a coordinate vector ``x``."""
        if self.source.dim == 0:
            return zeros(self.target_dim, self.target_dim)
        return np.tensordot(np.asarray(x, dtype=object), self.rhoL, axes=([0], [0]))

    def right(self, x) -> np.ndarray:
        if self.source.dim == 0:
            return zeros(self.target_dim, self.target_dim)
        return np.tensordot(np.asarray(x, dtype=object), self.rhoR, axes=([0], [0]))


class LeibnizGRepresentation:
    """A Leibniz algebra ``h`` on which ``g`` acts by ``action``."""

    def __init__(self, g: LeibnizAlgebra, h: LeibnizAlgebra, action: Optional[ActionPair] = None,
                 max_dim: int = MAX_TOTAL_DIM):
        if g.dim + h.dim > max_dim:
            raise DimensionCapError(
                f"dim(g) + dim(h) = {g.dim + h.dim} exceeds the cap {max_dim}")
        if action is None:
            action = ActionPair.zero(g, h.dim)
        if action.target_dim != h.dim or action.source.dim != g.dim:
            raise ValueError("action shape does not match (g, h)")
        self.g = g
        self.h = h
        self.action = action

    @classmethod
    def regular(cls, g: LeibnizAlgebra) -> "LeibnizGRepresentation":
        return cls(g, g, ActionPair.regular(g))

    @property
    def rhoL(self):
        return self.action.rhoL

    @property
    def rhoR(self):
        return self.action.rhoR


def validate_leibniz(a: LeibnizAlgebra) -> Report:
    """Leibniz identity ``[x,[y,z]] = [[x,y],z] + [y,[x,z]]`` on all basis triples."""
    c = a.structure
    rep = Report()
    n = a.dim
    if n == 0:
        return rep
    # left[i, j, k, :] = [e_i, [e_j, e_k]] etc.
    inner = np.tensordot(c, c, axes=([2], [1]))           # [e_j,e_k] -> (j,k,i,out): i bracketed on the left
    lhs = np.transpose(inner, (2, 0, 1, 3))
    first = np.tensordot(c, c, axes=([2], [0]))           # [[e_i,e_j], e_k] -> (i,j,k,out)
    second = np.transpose(lhs, (1, 0, 2, 3))              # [e_j,[e_i,e_k]]
    rhs = first + second
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if not np.array_equal(lhs[i, j, k], rhs[i, j, k]):
                    rep.add("leibniz", (i, j, k), lhs[i, j, k], rhs[i, j, k])
    return rep


def validate_representation(a: ActionPair) -> Report:
    """The three compatibility identities between ``[.,.]_g`` and the actions."""
    g = a.source
    rep = Report()
    L, R = a.rhoL, a.rhoR
    for i in range(g.dim):
        for j in range(g.dim):
            br = g.structure[i, j]
            Lb, Rb = a.left(br), a.right(br)
            checks = (
                ("rep_left", Lb, matmul(L[i], L[j]) - matmul(L[j], L[i])),
                ("rep_mixed", Rb, matmul(L[i], R[j]) - matmul(R[j], L[i])),
                ("rep_right", Rb, matmul(L[i], R[j]) + matmul(R[j], R[i])),
            )
            for name, lhs, rhs in checks:
                if not np.array_equal(lhs, rhs):
                    rep.add(name, (i, j), lhs, rhs)
    return rep


def _mixed_derivation_failures(r: LeibnizGRepresentation, rhoL, rhoR) -> Report:
    h = r.h
    rep = Report()
    m = h.dim
    for a in range(r.g.dim):
        La, Ra = rhoL[a], rhoR[a]
        for p in range(m):
            hp = h.unit(p)
            for q in range(m):
                kq = h.unit(q)
                hk = h.structure[p, q]
                lhs = matmul(La, hk)
                rhs = h.bracket(La[:, p], kq) + h.bracket(hp, La[:, q])
                if not np.array_equal(lhs, rhs):
                    rep.add("La", (a, p, q), lhs, rhs)
                lhs = h.bracket(hp, Ra[:, q])
                rhs = matmul(Ra, hk) + h.bracket(kq, Ra[:, p])
                if not np.array_equal(lhs, rhs):
                    rep.add("Lb", (a, p, q), lhs, rhs)
                lhs = h.bracket(hp, La[:, q])
                rhs = h.bracket(Ra[:, p], kq) + matmul(La, hk)
                if not np.array_equal(lhs, rhs):
                    rep.add("Lc", (a, p, q), lhs, rhs)
    return rep


def validate_leibniz_g_representation(r: LeibnizGRepresentation) -> Report:
    rep = validate_representation(r.action)
    rep.extend(_mixed_derivation_failures(r, r.rhoL, r.rhoR))
    return rep


def semidirect_structure(g: LeibnizAlgebra, h: LeibnizAlgebra, rhoL, rhoR) -> np.ndarray:
    """Structure constants of ``[(x,h),(y,k)] = [x,y] + rhoL(x)k + rhoR(y)h + [h,k]``.

    No validity is presumed; callers decide what to check.
    """
    n, m = g.dim, h.dim
    c = zeros(n + m, n + m, n + m)
    c[:n, :n, :n] = g.structure
    c[n:, n:, n:] = h.structure
    for a in range(n):
        # [e_a, f_q] = rhoL(e_a) f_q ; [f_p, e_a] = rhoR(e_a) f_p
        c[a, n:, n:] = np.asarray(rhoL[a], dtype=object).T
        c[n:, a, n:] = np.asarray(rhoR[a], dtype=object).T
    return c


def _sum_basis(g, h):
    return list(g.basis) + list(h.basis)


def semidirect_product(r: LeibnizGRepresentation) -> LeibnizAlgebra:
    rep = validate_leibniz_g_representation(r)
    if not rep.ok:
        f = rep.failures[0]
        raise ValueError(f"not a Leibniz g-representation: {f.check} fails at {f.indices}")
    c = semidirect_structure(r.g, r.h, r.rhoL, r.rhoR)
    return LeibnizAlgebra(c, _sum_basis(r.g, r.h), dim=r.g.dim + r.h.dim)


def twisted_action_matrices(r: LeibnizGRepresentation, H) -> tuple[np.ndarray, np.ndarray]:
    """``rho^L_H(x) = rho^L(x) + [H x, -]`` and ``rho^R_H(x) = rho^R(x) + [-, H x]``."""
    H = as_matrix(H, cols=r.g.dim)
    n, m = r.g.dim, r.h.dim
    L, R = zeros(n, m, m), zeros(n, m, m)
    for a in range(n):
        hx = H[:, a]
        L[a] = r.rhoL[a] + r.h.left_mult(hx)
        R[a] = r.rhoR[a] + r.h.right_mult(hx)
    return L, R


def twisted_semidirect_product(r: LeibnizGRepresentation, H) -> LeibnizAlgebra:
    from crossed_leibniz.crossed import check_crossed_hom

    report = check_crossed_hom(r, H)
    if not report.ok:
        i, j = report.failures[0].indices
        raise ValueError(
            f"H is not a crossed homomorphism: identity fails at ({r.g.basis[i]}, {r.g.basis[j]})")
    L, R = twisted_action_matrices(r, H)
    c = semidirect_structure(r.g, r.h, L, R)
    return LeibnizAlgebra(c, _sum_basis(r.g, r.h), dim=r.g.dim + r.h.dim)
