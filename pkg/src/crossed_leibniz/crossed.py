"""Crossed homomorphisms ``H: g -> h`` and the theorems characterising them.

Linear maps ``g -> h`` are ``dim(h) x dim(g)`` matrices acting on
coordinate columns.  Each characterisation (Maurer-Cartan element,
isomorphism of semidirect products, graph embedding) is its own
operation so that a candidate map can be audited by independent routes.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from crossed_leibniz.algebra import (
    ActionPair,
    LeibnizAlgebra,
    LeibnizGRepresentation,
    Report,
    semidirect_structure,
    twisted_action_matrices,
    validate_leibniz_g_representation,
)
from crossed_leibniz.cochains import Cochain, DgLaContext, derived_bracket, differential_d, differential_dH
from crossed_leibniz.linalg import as_matrix, identity, matmul, zeros


def _map(rep: LeibnizGRepresentation, H) -> np.ndarray:
    if isinstance(H, CrossedHom):
        H = H.matrix
    if isinstance(H, Cochain):
        H = H.as_matrix()
    H = as_matrix(H, cols=rep.g.dim) if rep.h.dim else zeros(0, rep.g.dim)
    if H.shape != (rep.h.dim, rep.g.dim):
        raise ValueError(f"map must be {rep.h.dim}x{rep.g.dim}, got {H.shape[0]}x{H.shape[1]}")
    return H


class CrossedHom:
    """A map ``H: g -> h`` verified to satisfy
    ``H[x,y] = rho^L(x)H(y) + rho^R(y)H(x) + [H(x), H(y)]``."""

    def __init__(self, ctx: LeibnizGRepresentation, matrix, check: bool = True):
        self.ctx = ctx
        self.matrix = _map(ctx, matrix)
        if check:
            rep = check_crossed_hom(ctx, self.matrix)
            if not rep.ok:
                i, j = rep.failures[0].indices
                raise ValueError(
                    f"not a crossed homomorphism: fails at ({ctx.g.basis[i]}, {ctx.g.basis[j]})")

    def __call__(self, x):
        return matmul(self.matrix, np.asarray(x, dtype=object).reshape(-1, 1)).reshape(-1)

    def dgla(self) -> DgLaContext:
        return DgLaContext(self.ctx, self.matrix)


@dataclass
class CrossedHomMorphism:
    phi_g: np.ndarray
    phi_h: np.ndarray
    source: CrossedHom
    target: CrossedHom


def crossed_defect(rep: LeibnizGRepresentation, H) -> tuple[np.ndarray, np.ndarray]:
    """Both sides of the crossed-homomorphism identity on all basis pairs.

    Returns ``(lhs, rhs)`` arrays indexed ``[i, j, :]`` with
    ``lhs = H[e_i, e_j]`` and ``rhs = rho^L(e_i) H e_j + rho^R(e_j) H e_i + [H e_i, H e_j]``.
    """
    H = _map(rep, H)
    n, m = rep.g.dim, rep.h.dim
    lhs, rhs = zeros(n, n, m), zeros(n, n, m)
    for i in range(n):
        for j in range(n):
            lhs[i, j] = matmul(H, rep.g.structure[i, j].reshape(-1, 1)).reshape(-1) if m else zeros(0)
            if m:
                rhs[i, j] = (matmul(rep.rhoL[i], H[:, j].reshape(-1, 1)).reshape(-1)
                             + matmul(rep.rhoR[j], H[:, i].reshape(-1, 1)).reshape(-1)
                             + rep.h.bracket(H[:, i], H[:, j]))
    return lhs, rhs


def check_crossed_hom(ctx: LeibnizGRepresentation, matrix) -> Report:
    lhs, rhs = crossed_defect(ctx, matrix)
    report = Report()
    for i in range(ctx.g.dim):
        for j in range(ctx.g.dim):
            if not np.array_equal(lhs[i, j], rhs[i, j]):
                report.add("crossed", (i, j), lhs[i, j], rhs[i, j])
    return report


def mc_residual(ctx: LeibnizGRepresentation, matrix) -> Cochain:
    """``dH + 1/2 [[H, H]]^`` computed through the derived bracket."""
    H = Cochain.from_matrix(_map(ctx, matrix))
    dgla = DgLaContext(ctx)
    return differential_d(H, dgla, route="bracket") + Fraction(1, 2) * derived_bracket(H, H, dgla)


def defect_cochain(ctx: LeibnizGRepresentation, matrix) -> Cochain:
    """``rho^L(x)H(y) + rho^R(y)H(x) - H[x,y] + [H(x), H(y)]`` read off basis pairs."""
    lhs, rhs = crossed_defect(ctx, matrix)
    return Cochain(rhs - lhs, ctx.g.dim)


def induced_action(H: CrossedHom) -> ActionPair:
    """The twisted action ``rho^L_H(x) = rho^L(x) + [H x, -]``, ``rho^R_H(x) = rho^R(x) + [-, H x]``."""
    if not isinstance(H, CrossedHom):
        raise TypeError("induced_action needs a CrossedHom")
    L, R = twisted_action_matrices(H.ctx, H.matrix)
    return ActionPair(H.ctx.g, list(L), list(R), H.ctx.h.dim)


def induced_representation(H: CrossedHom) -> LeibnizGRepresentation:
    return LeibnizGRepresentation(H.ctx.g, H.ctx.h, induced_action(H))


def _raw_twisted(ctx, H):
    L, R = twisted_action_matrices(ctx, H)
    return semidirect_structure(ctx.g, ctx.h, L, R)


def _homomorphism_failures(phi, src_c, dst_c, pairs, check):
    report = Report()
    dst = LeibnizAlgebra(dst_c, dim=dst_c.shape[0])
    for (i, j) in pairs:
        lhs = matmul(phi, src_c[i, j].reshape(-1, 1)).reshape(-1)
        rhs = dst.bracket(phi[:, i], phi[:, j])
        if not np.array_equal(lhs, rhs):
            report.add(check, (i, j), lhs, rhs)
    return report


def check_hat_iso(H_candidate, ctx: LeibnizGRepresentation) -> Report:
    """Is ``(x, h) -> (x, H x + h)`` a homomorphism from the twisted to the plain semidirect product?

    The twisted bracket is assembled from the candidate's twisted action
    whether or not that action is a representation.  Failure indices are
    basis pairs of ``g (+) h``.
    """
    H = _map(ctx, H_candidate)
    n, m = ctx.g.dim, ctx.h.dim
    N = n + m
    hat = identity(N)
    hat[n:, :n] = H
    twisted = _raw_twisted(ctx, H)
    plain = semidirect_structure(ctx.g, ctx.h, ctx.rhoL, ctx.rhoR)
    pairs = [(i, j) for i in range(N) for j in range(N)]
    return _homomorphism_failures(hat, twisted, plain, pairs, "hat_iso")


def check_graph_embedding(H_candidate, ctx: LeibnizGRepresentation) -> Report:
    """Is ``x -> (x, H x)`` a homomorphism from ``g`` into the semidirect product?

    The codomain is the untwisted product ``g (x) h``: this is the ``h = k = 0``
    slice of :func:`check_hat_iso`.  Into the twisted product the graph
    would pick up ``3[Hx, Hy]`` and fail for most crossed homomorphisms.
    """
    H = _map(ctx, H_candidate)
    n, m = ctx.g.dim, ctx.h.dim
    plain = LeibnizAlgebra(semidirect_structure(ctx.g, ctx.h, ctx.rhoL, ctx.rhoR), dim=n + m)
    iota = zeros(n + m, n)
    iota[:n, :n] = identity(n)
    iota[n:, :] = H
    report = Report()
    for i in range(n):
        for j in range(n):
            lhs = matmul(iota, ctx.g.structure[i, j].reshape(-1, 1)).reshape(-1)
            rhs = plain.bracket(iota[:, i], iota[:, j])
            if not np.array_equal(lhs, rhs):
                report.add("graph_embedding", (i, j), lhs, rhs)
    return report


def check_morphism(mor: CrossedHomMorphism) -> Report:
    """Conditions for ``(phi_g, phi_h)`` to be a morphism ``H -> H'``.

    Checks are tagged ``phi_g_hom``, ``phi_h_hom``, ``commutes``
    (``phi_h H = H' phi_g``), ``rhoL`` and ``rhoR``.
    """
    ctx = mor.source.ctx
    g, h = ctx.g, ctx.h
    pg = as_matrix(mor.phi_g, cols=g.dim)
    ph = as_matrix(mor.phi_h, cols=h.dim) if h.dim else zeros(0, 0)
    report = Report()
    for f in g.is_homomorphism(pg).failures:
        report.add("phi_g_hom", f.indices, f.lhs, f.rhs)
    for f in h.is_homomorphism(ph).failures:
        report.add("phi_h_hom", f.indices, f.lhs, f.rhs)
    left = matmul(ph, mor.source.matrix)
    right = matmul(mor.target.matrix, pg)
    for a in range(g.dim):
        if not np.array_equal(left[:, a], right[:, a]):
            report.add("commutes", (a,), left[:, a], right[:, a])
    act = ctx.action
    for a in range(g.dim):
        img = pg[:, a]
        for name, ops, op_of in (("rhoL", ctx.rhoL, act.left), ("rhoR", ctx.rhoR, act.right)):
            lhs = matmul(ph, ops[a])
            rhs = matmul(op_of(img), ph)
            for q in range(h.dim):
                if not np.array_equal(lhs[:, q], rhs[:, q]):
                    report.add(name, (a, q), lhs[:, q], rhs[:, q])
    return report


def twisted_mc_residual(H: CrossedHom, Hp) -> Cochain:
    """``d_H(H') + 1/2 [[H', H']]^``; zero exactly when ``H + H'`` is crossed."""
    Hp = Cochain.from_matrix(_map(H.ctx, Hp))
    dgla = H.dgla()
    return differential_dH(Hp, dgla, route="bracket") + Fraction(1, 2) * derived_bracket(Hp, Hp, dgla)


def is_leibniz_g_representation(H: CrossedHom) -> Report:
    return validate_leibniz_g_representation(induced_representation(H))
