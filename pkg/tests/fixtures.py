"""Shared fixture corpus: algebras, representations, maps and deformations."""

from itertools import product

import numpy as np

from crossed_leibniz import (
    CrossedHom,
    FormalMap,
    LeibnizAlgebra,
    LeibnizGRepresentation,
)
from crossed_leibniz.algebra import ActionPair

A = LeibnizAlgebra.from_brackets

# name -> (algebra, satisfies the left Leibniz identity)
ALGEBRAS = {
    "abelian1": (LeibnizAlgebra.abelian(1), True),
    "abelian2": (LeibnizAlgebra.abelian(2), True),
    "n2": (A(2, {(0, 0): [0, 1]}), True),
    "lie2": (A(2, {(0, 1): [0, 1], (1, 0): [0, -1]}), True),
    "x1": (A(2, {(0, 0): [0, 1], (0, 1): [0, 1]}), True),
    "x3": (A(2, {(0, 1): [0, 1]}), True),
    "heis3": (A(3, {(0, 1): [0, 0, 1], (1, 0): [0, 0, -1]}), True),
    "nil3": (A(3, {(0, 0): [0, 0, 1], (1, 1): [0, 0, 1], (0, 1): [0, 0, 2]}), True),
    "sl2": (A(3, {(0, 1): [0, 0, 1], (1, 0): [0, 0, -1],
                  (2, 0): [2, 0, 0], (0, 2): [-2, 0, 0],
                  (2, 1): [0, -2, 0], (1, 2): [0, 2, 0]}), True),
    # broken ones
    "right_only": (A(2, {(1, 0): [0, 1]}), False),
    "idempotent": (A(2, {(0, 0): [1, 0]}), False),
    "x6": (A(2, {(0, 1): [1, 0]}), False),
    "x5": (A(2, {(1, 1): [0, 1], (1, 0): [0, 1]}), False),
    "skew3": (A(3, {(0, 1): [0, 0, 1], (2, 0): [0, 1, 0]}), False),
}


def algebra(name):
    return ALGEBRAS[name][0]


def _contexts():
    n2, lie2 = algebra("n2"), algebra("lie2")
    a1 = LeibnizAlgebra.abelian(1)
    return {
        "n2_reg": LeibnizGRepresentation.regular(n2),
        "lie2_reg": LeibnizGRepresentation.regular(lie2),
        "x3_reg": LeibnizGRepresentation.regular(algebra("x3")),
        "x1_reg": LeibnizGRepresentation.regular(algebra("x1")),
        "a1_n2_zero": LeibnizGRepresentation(a1, n2),
        "n2_a1": LeibnizGRepresentation(
            n2, a1, ActionPair(n2, [[[1]], [[0]]], [[[-1]], [[0]]])),
        "lie2_n2_zero": LeibnizGRepresentation(lie2, n2),
        "lie2_lie2_zero": LeibnizGRepresentation(lie2, lie2),
        "heis3_reg": LeibnizGRepresentation.regular(algebra("heis3")),
    }


CONTEXTS = _contexts()

# contexts small enough to sweep every degree up to 3 quickly
SMALL = ["n2_reg", "lie2_reg", "x3_reg", "x1_reg", "a1_n2_zero", "n2_a1", "lie2_n2_zero", "lie2_lie2_zero"]


def grid_maps(ctx_name, values=(-1, 0, 1)):
    """Every h x g matrix with entries from ``values``."""
    r = CONTEXTS[ctx_name]
    m, n = r.h.dim, r.g.dim
    for ent in product(values, repeat=m * n):
        yield np.array(ent, dtype=object).reshape(m, n)


# (context, matrix, is a crossed homomorphism); flags checked by the naive oracle
MAPS = [
    ("n2_reg", [[0, 0], [0, 0]], True),
    ("n2_reg", [[-1, 0], [0, -1]], True),
    ("n2_reg", [[1, 0], [0, 1]], False),
    ("n2_reg", [[0, 0], [1, 0]], True),
    ("n2_reg", [[0, 1], [0, 0]], False),
    ("n2_reg", [[-1, 0], [1, -1]], True),
    ("lie2_reg", [[0, 0], [0, -1]], True),
    ("lie2_reg", [[0, 0], [-1, 1]], True),
    ("lie2_reg", [[1, 0], [0, -1]], True),
    ("lie2_reg", [[0, 0], [-1, 0]], True),
    ("lie2_reg", [[1, 0], [0, 1]], False),
    ("lie2_reg", [[0, 1], [1, 0]], False),
    ("x3_reg", [[-1, 0], [0, -1]], True),
    ("x3_reg", [[1, 1], [0, 0]], False),
    ("x1_reg", [[-1, 0], [0, -1]], True),
    ("x1_reg", [[0, 1], [1, 0]], False),
    ("a1_n2_zero", [[0], [1]], True),
    ("a1_n2_zero", [[1], [0]], False),
    ("n2_a1", [[-1, 0]], True),
    ("n2_a1", [[1, 1]], False),
    ("lie2_n2_zero", [[0, 0], [0, 0]], True),
    ("lie2_n2_zero", [[1, 0], [0, 0]], False),
    ("lie2_lie2_zero", [[1, 0], [0, 1]], True),
    ("lie2_lie2_zero", [[0, 1], [0, 0]], False),
    ("heis3_reg", [[-1, 0, 0], [0, -1, 0], [0, 0, -1]], True),
    ("heis3_reg", [[0, 0, 0], [0, 0, 0], [1, 0, 0]], True),
    ("heis3_reg", [[1, 0, 0], [0, 1, 0], [0, 0, 1]], False),
]


def crossed_maps():
    return [(c, M) for c, M, ok in MAPS if ok]


def crossed_hom(ctx_name, M):
    return CrossedHom(CONTEXTS[ctx_name], M)


# (context, H, Nijenhuis element x)
NIJENHUIS = [
    ("lie2_reg", [[0, 0], [0, -1]], [0, 1]),
    ("lie2_reg", [[0, 0], [-1, 1]], [0, 1]),
    ("lie2_reg", [[1, 0], [0, -1]], [0, -1]),
    ("n2_reg", [[-1, 0], [0, -1]], [0, 1]),
    ("lie2_reg", [[0, 0], [0, 0]], [0, 1]),
]


# (context, terms H_0..H_N), all genuine deformations of order N
DEFORMATIONS = [
    ("a1_n2_zero", [[[0], [0]], [[1], [0]]]),
    ("a1_n2_zero", [[[0], [0]], [[0], [1]]]),
    ("lie2_reg", [[[0, 0], [0, -1]], [[0, 0], [0, 1]]]),
    ("lie2_reg", [[[0, 0], [0, 0]], [[0, 0], [1, 0]], [[0, 0], [0, 0]]]),
    ("n2_a1", [[[-1, 0]], [[1, 0]]]),
    ("n2_reg", [[[-1, 0], [0, -1]], [[0, 0], [1, 0]], [[0, 0], [0, 0]], [[0, 0], [0, 0]]]),
    ("lie2_reg", [[[0, 0], [0, -1]], [[0, 0], [-1, 0]]]),
]


def formal(ctx_name, terms):
    return FormalMap(CONTEXTS[ctx_name], [np.array(t, dtype=object) for t in terms])
