"""Deformations of a crossed homomorphism.

Polynomials in the formal parameter ``t`` are plain lists of coefficient
arrays, index ``i`` holding the coefficient of ``t^i``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Sequence

import numpy as np

from crossed_leibniz.algebra import ConsistencyError, LeibnizGRepresentation, Report
from crossed_leibniz.cochains import (
    Cochain,
    DgLaContext,
    delta_leib_twisted,
    derived_bracket,
    differential_dH,
)
from crossed_leibniz.cohomology import cohomology, differential_matrix, is_coboundary, solve_coboundary
from crossed_leibniz.crossed import CrossedHom, _map, check_crossed_hom
from crossed_leibniz.linalg import (
    as_vector,
    identity,
    is_zero,
    kernel_basis,
    matmul,
    rank,
    zeros,
)

MAX_ORDER = 6


def _mv(M, v):
    return matmul(M, np.asarray(v, dtype=object).reshape(-1, 1)).reshape(-1)


def _poly_apply(pm, pv):
    """Product of a matrix polynomial and a vector polynomial."""
    out = [None] * (len(pm) + len(pv) - 1)
    for a, M in enumerate(pm):
        for b, v in enumerate(pv):
            term = _mv(M, v)
            out[a + b] = term if out[a + b] is None else out[a + b] + term
    return out


def _poly_bracket(alg, pu, pv):
    out = [None] * (len(pu) + len(pv) - 1)
    for a, u in enumerate(pu):
        for b, v in enumerate(pv):
            term = alg.bracket(u, v)
            out[a + b] = term if out[a + b] is None else out[a + b] + term
    return out


def _poly_compare(report, check, index, lhs, rhs):
    size = max(len(lhs), len(rhs))
    dim = len((lhs or rhs)[0])
    pad = lambda p: list(p) + [zeros(dim)] * (size - len(p))
    for power, (a, b) in enumerate(zip(pad(lhs), pad(rhs))):
        if not np.array_equal(a, b):
            report.add(check, tuple(index) + (power,), a, b)


def _crossed(H) -> CrossedHom:
    if not isinstance(H, CrossedHom):
        raise TypeError("expected a CrossedHom")
    return H


def defect_coefficients(ctx: LeibnizGRepresentation, terms: Sequence, order: Optional[int] = None):
    """t-coefficients of the crossed-hom defect of ``H_t = sum t^i H_i``, mod ``t^(order+1)``.

    Coefficient ``n`` is the 2-cochain
    ``rho^L(x)H_n(y) + rho^R(y)H_n(x) + sum_{i+j=n} [H_i x, H_j y] - H_n[x, y]``.
    """
    terms = [_map(ctx, T) for T in terms]
    if order is None:
        order = 2 * (len(terms) - 1)
    n, m = ctx.g.dim, ctx.h.dim
    out = []
    for deg in range(order + 1):
        E = zeros(n, n, m)
        Hn = terms[deg] if deg < len(terms) else None
        for i in range(n):
            for j in range(n):
                v = zeros(m)
                if Hn is not None:
                    v = v + _mv(ctx.rhoL[i], Hn[:, j]) + _mv(ctx.rhoR[j], Hn[:, i]) \
                        - _mv(Hn, ctx.g.structure[i, j])
                for a in range(max(0, deg - len(terms) + 1), min(deg, len(terms) - 1) + 1):
                    v = v + ctx.h.bracket(terms[a][:, i], terms[deg - a][:, j])
                E[i, j] = v
        out.append(Cochain(E, n))
    return out


# -- linear deformations ---------------------------------------------------

def check_linear_deformation(H: CrossedHom, H1) -> Report:
    """Is ``H + t H1`` crossed for every ``t``?

    Failures are tagged ``eq_cocycle`` (the first-order condition) and
    ``eq_square`` (``[H1 x, H1 y] = 0``).  Both are cross-checked against
    the t-expansion of the defect and against ``d_H(H1) = 0``.
    """
    H = _crossed(H)
    ctx = H.ctx
    H1 = _map(ctx, H1)
    report = Report()
    for i in range(ctx.g.dim):
        for j in range(ctx.g.dim):
            lhs = _mv(H1, ctx.g.structure[i, j])
            rhs = (_mv(ctx.rhoL[i], H1[:, j]) + _mv(ctx.rhoR[j], H1[:, i])
                   + ctx.h.bracket(H1[:, i], H.matrix[:, j]) + ctx.h.bracket(H.matrix[:, i], H1[:, j]))
            if not np.array_equal(lhs, rhs):
                report.add("eq_cocycle", (i, j), lhs, rhs)
            sq = ctx.h.bracket(H1[:, i], H1[:, j])
            if not is_zero(sq):
                report.add("eq_square", (i, j), sq, zeros(ctx.h.dim))
    coeffs = defect_coefficients(ctx, [H.matrix, H1])
    cocycle = differential_dH(Cochain.from_matrix(H1), H.dgla()).is_zero()
    first_ok = "eq_cocycle" not in report.failed_checks()
    second_ok = "eq_square" not in report.failed_checks()
    if not (first_ok == coeffs[1].is_zero() == cocycle and second_ok == coeffs[2].is_zero()):
        raise ConsistencyError("linear deformation equations disagree with the t-expansion")
    report.details.update(cocycle=cocycle, t1_zero=coeffs[1].is_zero(), t2_zero=coeffs[2].is_zero())
    return report


def _vec_or_zero(x, dim):
    return zeros(dim) if x is None else as_vector(x)


def equivalence_maps(H: CrossedHom, x):
    """``phi_t = id + t L_x`` on g and ``psi_t = id + t rho^L(x)`` on h."""
    ctx = H.ctx
    x = as_vector(x)
    phi = [identity(ctx.g.dim), ctx.g.left_mult(x)]
    psi = [identity(ctx.h.dim), ctx.action.left(x)]
    return phi, psi


def _equivalence_by_coefficients(H: CrossedHom, H1, H1p, x) -> Report:
    ctx = H.ctx
    g, h = ctx.g, ctx.h
    phi, psi = equivalence_maps(H, x)
    act = ctx.action
    rep = Report()
    for y in range(g.dim):
        py = _poly_apply(phi, [g.unit(y)])
        for z in range(g.dim):
            pz = _poly_apply(phi, [g.unit(z)])
            _poly_compare(rep, "i_g", (y, z), _poly_bracket(g, py, pz),
                          _poly_apply(phi, [g.structure[y, z]]))
    for p in range(h.dim):
        ph = _poly_apply(psi, [h.unit(p)])
        for q in range(h.dim):
            pk = _poly_apply(psi, [h.unit(q)])
            _poly_compare(rep, "i_h", (p, q), _poly_bracket(h, ph, pk),
                          _poly_apply(psi, [h.structure[p, q]]))
    for y in range(g.dim):
        py = _poly_apply(phi, [g.unit(y)])
        left_of = [act.left(c) for c in py]
        right_of = [act.right(c) for c in py]
        for p in range(h.dim):
            ph = _poly_apply(psi, [h.unit(p)])
            _poly_compare(rep, "ii", (y, p), _poly_apply(psi, [ctx.rhoL[y][:, p]]),
                          _poly_apply(left_of, ph))
            _poly_compare(rep, "iii", (y, p), _poly_apply(psi, [ctx.rhoR[y][:, p]]),
                          _poly_apply(right_of, ph))
    Ht = [H.matrix, H1]
    Htp = [H.matrix, H1p]
    for y in range(g.dim):
        lhs = _poly_apply(Htp, _poly_apply(phi, [g.unit(y)]))
        rhs = _poly_apply(psi, _poly_apply(Ht, [g.unit(y)]))
        _poly_compare(rep, "iv", (y,), lhs, rhs)
    return rep


def _equivalence_by_equations(H: CrossedHom, H1, H1p, x) -> Report:
    ctx = H.ctx
    g, h = ctx.g, ctx.h
    act = ctx.action
    x = as_vector(x)
    Lx = act.left(x)
    Hx = _mv(H.matrix, x)
    rep = Report()
    xy = [g.bracket(x, g.unit(y)) for y in range(g.dim)]
    for y in range(g.dim):
        for z in range(g.dim):
            v = g.bracket(xy[y], xy[z])
            if not is_zero(v):
                rep.add("square_g", (y, z), v, zeros(g.dim))
    for p in range(h.dim):
        for q in range(h.dim):
            v = h.bracket(Lx[:, p], Lx[:, q])
            if not is_zero(v):
                rep.add("square_h", (p, q), v, zeros(h.dim))
    for y in range(g.dim):
        for name, op in (("left_kill", act.left), ("right_kill", act.right)):
            M = matmul(op(xy[y]), Lx)
            if not is_zero(M):
                rep.add(name, (y,), M, zeros(*M.shape))
        diff = H1[:, y] - H1p[:, y]
        expected = _mv(ctx.rhoR[y], Hx) + h.bracket(Hx, H.matrix[:, y])
        if not np.array_equal(diff, expected):
            rep.add("difference", (y,), diff, expected)
        lhs = _mv(Lx, H1[:, y])
        rhs = _mv(H1p, xy[y])
        if not np.array_equal(lhs, rhs):
            rep.add("second_order", (y,), lhs, rhs)
    return rep


def check_equivalence(H: CrossedHom, H1, H1p, x) -> Report:
    """Are ``H + t H1`` and ``H + t H1'`` equivalent through ``(id + t L_x, id + t rho^L(x))``?

    The morphism conditions are expanded coefficientwise in ``t``; the
    resulting equation list (squares vanish, ``rho([x,y]) rho^L(x) = 0``, the
    first- and second-order relations between ``H1`` and ``H1'``) is
    evaluated separately and the two verdicts must agree.
    """
    H = _crossed(H)
    H1 = _map(H.ctx, H1)
    H1p = _map(H.ctx, H1p)
    for name, T in (("H1", H1), ("H1'", H1p)):
        if not check_linear_deformation(H, T).ok:
            raise ValueError(f"H + t{name} is not a linear deformation")
    coeff = _equivalence_by_coefficients(H, H1, H1p, x)
    eqs = _equivalence_by_equations(H, H1, H1p, x)
    if coeff.ok != eqs.ok:
        raise ConsistencyError("t-coefficient and equation forms of equivalence disagree")
    coeff.details["equations"] = eqs
    return coeff


# -- Nijenhuis elements ----------------------------------------------------

@dataclass
class NijenhuisWitness:
    x: np.ndarray
    checks: dict = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.checks.values())


def nijenhuis_check(H: CrossedHom, x) -> NijenhuisWitness:
    """Conditions making ``x`` a Nijenhuis element of ``H``.

    ``square`` covers ``[[x,y],[x,z]] = 0`` and ``[rho^L(x)h, rho^L(x)k] = 0``;
    ``left_kill``/``right_kill`` are ``rho^L([x,y]) rho^L(x) = 0`` and
    ``rho^R([x,y]) rho^L(x) = 0``; ``closing`` is
    ``rho^L(x)(rho^R(y)H(x) + [H(x), H(y)]) = 0``.
    """
    H = _crossed(H)
    ctx = H.ctx
    x = as_vector(x)
    zero = zeros(ctx.h.dim, ctx.g.dim)
    eqs = _equivalence_by_equations(H, zero, zero, x)
    checks = {"square": Report(), "left_kill": Report(), "right_kill": Report(), "closing": Report()}
    for f in eqs.failures:
        if f.check in ("square_g", "square_h"):
            checks["square"].failures.append(f)
        elif f.check in checks:
            checks[f.check].failures.append(f)
    H1 = _trivial_h1(H, x)
    Lx = ctx.action.left(x)
    for y in range(ctx.g.dim):
        v = _mv(Lx, H1[:, y])
        if not is_zero(v):
            checks["closing"].add("closing", (y,), v, zeros(ctx.h.dim))
    return NijenhuisWitness(x, checks)


def _trivial_h1(H: CrossedHom, x) -> np.ndarray:
    Hx = Cochain.from_vector(_mv(H.matrix, as_vector(x)), H.ctx.g.dim)
    return (-delta_leib_twisted(Hx, H.dgla())).as_matrix()


def trivial_deformation_from_nijenhuis(H: CrossedHom, x) -> np.ndarray:
    """``H1 = -delta_Leib(H(x))``, i.e. ``H1(y) = rho^R(y)H(x) + [H(x), H(y)]``."""
    H = _crossed(H)
    w = nijenhuis_check(H, x)
    if not w.ok:
        bad = sorted(k for k, r in w.checks.items() if not r.ok)
        raise ValueError(f"x is not a Nijenhuis element (fails: {', '.join(bad)})")
    H1 = _trivial_h1(H, x)
    if not check_linear_deformation(H, H1).ok:
        raise ConsistencyError("H + t H1 is not a linear deformation")
    if not check_equivalence(H, H1, zeros(*H1.shape), x).ok:
        raise ConsistencyError("H + t H1 is not equivalent to H")
    return H1


# -- formal deformations ---------------------------------------------------

@dataclass
class FormalMap:
    """``H_t = H_0 + t H_1 + ... + t^N H_N`` over a fixed Leibniz g-representation."""

    ctx: LeibnizGRepresentation
    terms: list

    def __post_init__(self):
        self.terms = [_map(self.ctx, T) for T in self.terms]
        if not self.terms:
            raise ValueError("a formal map needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.terms) - 1

    def base(self) -> CrossedHom:
        return CrossedHom(self.ctx, self.terms[0])

    def extended(self, term) -> "FormalMap":
        return FormalMap(self.ctx, self.terms + [_map(self.ctx, term)])


def _bracket_sum(terms, total: int, dgla: DgLaContext) -> Optional[Cochain]:
    acc = None
    for i in range(1, total):
        j = total - i
        if i >= len(terms) or j >= len(terms):
            continue
        b = derived_bracket(Cochain.from_matrix(terms[i]), Cochain.from_matrix(terms[j]), dgla)
        acc = b if acc is None else acc + b
    return acc


def deformation_residuals(Ht: FormalMap) -> list:
    """``d_H(H_n) + 1/2 sum_{i+j=n, i,j>=1} [[H_i, H_j]]^`` for ``n = 1..N``."""
    dgla = DgLaContext(Ht.ctx, Ht.terms[0])
    out = []
    for n in range(1, Ht.order + 1):
        r = differential_dH(Cochain.from_matrix(Ht.terms[n]), dgla, route="bracket")
        s = _bracket_sum(Ht.terms, n, dgla)
        out.append(r if s is None else r + Fraction(1, 2) * s)
    return out


def check_formal_deformation(Ht: FormalMap) -> Report:
    """Is ``H_t`` a crossed homomorphism modulo ``t^(N+1)``?

    Failures are tagged ``order_n`` with the offending basis pair.
    """
    report = Report()
    base = check_crossed_hom(Ht.ctx, Ht.terms[0])
    for f in base.failures:
        report.add("order_0", f.indices, f.lhs, f.rhs)
    if not base.ok:
        return report
    residuals = deformation_residuals(Ht)
    expansion = defect_coefficients(Ht.ctx, Ht.terms, Ht.order)
    for n, (r, e) in enumerate(zip(residuals, expansion[1:]), start=1):
        if r != e:
            raise ConsistencyError(f"order-{n} equation disagrees with the t-expansion")
        for idx in np.ndindex(*r.coeffs.shape[:-1]):
            if not is_zero(r.coeffs[idx]):
                report.add(f"order_{n}", idx, r.coeffs[idx], zeros(r.target_dim))
    return report


@dataclass
class ObstructionClass:
    cocycle: Cochain
    is_cocycle: bool
    preimage: Optional[Cochain]
    vanishes: bool

    @property
    def extensible(self) -> bool:
        return self.preimage is not None


def obstruction(Ht: FormalMap, max_order: int = MAX_ORDER) -> ObstructionClass:
    """``Ob = -1/2 sum_{i+j=N+1, i,j>=1} [[H_i, H_j]]^`` and whether it is a coboundary."""
    if Ht.order + 1 > max_order:
        raise ValueError(f"order {Ht.order + 1} exceeds the cap {max_order}")
    if not check_formal_deformation(Ht).ok:
        raise ValueError(f"not a deformation of order {Ht.order}")
    dgla = DgLaContext(Ht.ctx, Ht.terms[0])
    s = _bracket_sum(Ht.terms, Ht.order + 1, dgla)
    ob = Cochain.zero(2, dgla.n, dgla.m) if s is None else Fraction(-1, 2) * s
    closed = differential_dH(ob, dgla, route="induced").is_zero()
    pre = solve_coboundary(dgla, ob)
    vanishes = is_coboundary(dgla, ob)
    if vanishes != (pre is not None):
        raise ConsistencyError("solve and rank test disagree on the obstruction class")
    return ObstructionClass(ob, closed, pre, vanishes)


def extend_deformation(Ht: FormalMap, max_order: int = MAX_ORDER) -> Optional[FormalMap]:
    ob = obstruction(Ht, max_order)
    if ob.preimage is None:
        return None
    ext = Ht.extended(ob.preimage.as_matrix())
    if not check_formal_deformation(ext).ok:
        raise ConsistencyError("extension does not satisfy the next deformation equation")
    return ext


def cocycle_to_infinitesimal(H: CrossedHom, c, order: int = 3, max_order: int = MAX_ORDER) -> FormalMap:
    """Extend ``H + t c`` order by order; requires ``dim H^2_H = 0``."""
    H = _crossed(H)
    if order > max_order:
        raise ValueError(f"order {order} exceeds the cap {max_order}")
    c = _map(H.ctx, c)
    dgla = H.dgla()
    if not differential_dH(Cochain.from_matrix(c), dgla).is_zero():
        raise ValueError("c is not a 1-cocycle")
    h2 = cohomology(dgla, 2).dim_H
    if h2:
        raise ValueError(f"dim H^2_H = {h2} > 0; extensions may be obstructed")
    Ht = FormalMap(H.ctx, [H.matrix, c])
    while Ht.order < order:
        nxt = extend_deformation(Ht, max_order)
        if nxt is None:
            raise ConsistencyError("obstruction with H^2 = 0")
        Ht = nxt
    return Ht


# -- rigidity --------------------------------------------------------------

def rigidity_witness(H: CrossedHom, nijenhuis_family) -> Report:
    """Certify ``Z^1_H`` is spanned by ``delta_Leib(H(x))`` over the given Nijenhuis elements.

    Only the supplied family is used, so a failed certificate does not
    prove non-rigidity.
    """
    H = _crossed(H)
    dgla = H.dgla()
    vectors = []
    for x in nijenhuis_family:
        w = nijenhuis_check(H, x)
        if not w.ok:
            raise ValueError(f"family member {list(map(str, as_vector(x)))} is not a Nijenhuis element")
        vectors.append((-Cochain.from_matrix(_trivial_h1(H, x))).flat())
    z1 = kernel_basis(differential_matrix(dgla, 1))
    size = dgla.m * dgla.n
    span = zeros(size, len(vectors))
    for j, v in enumerate(vectors):
        span[:, j] = v
    span_rank = rank(span)
    report = Report()
    for idx, z in enumerate(z1):
        aug = zeros(size, len(vectors) + 1)
        aug[:, :-1] = span
        aug[:, -1] = z
        if rank(aug) > span_rank:
            report.add("uncovered_cocycle", (idx,), z, ())
    report.details.update(dim_Z1=len(z1), span_rank=span_rank)
    return report
