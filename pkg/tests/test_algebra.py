from itertools import product

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from crossed_leibniz import (
    ActionPair,
    LeibnizAlgebra,
    LeibnizGRepresentation,
    semidirect_product,
    twisted_semidirect_product,
    validate_leibniz,
    validate_leibniz_g_representation,
    validate_representation,
)
from crossed_leibniz.algebra import DimensionCapError
from fixtures import ALGEBRAS, CONTEXTS, algebra
from oracle import naive_is_leibniz


@pytest.mark.parametrize("name", sorted(ALGEBRAS))
def test_validate_leibniz_matches_naive(name):
    alg, expected = ALGEBRAS[name]
    assert validate_leibniz(alg).ok is expected
    assert naive_is_leibniz(alg.structure.tolist()) is expected


def test_failure_indices_name_a_violating_triple():
    alg = algebra("idempotent")
    rep = validate_leibniz(alg)
    seen = rep.failure_indices("leibniz")
    assert seen
    for i, j, k in product(range(alg.dim), repeat=3):
        x, y, z = alg.unit(i), alg.unit(j), alg.unit(k)
        lhs = alg.bracket(x, alg.bracket(y, z))
        rhs = alg.bracket(alg.bracket(x, y), z) + alg.bracket(y, alg.bracket(x, z))
        assert ((i, j, k) in seen) == (not np.array_equal(lhs, rhs))


def test_brackets_and_multiplication_operators():
    n2 = algebra("n2")
    assert list(n2.bracket(n2.unit(0), n2.unit(0))) == [0, 1]
    assert n2.left_mult(n2.unit(0)).tolist() == [[0, 0], [1, 0]]
    assert n2.right_mult(n2.unit(0)).tolist() == [[0, 0], [1, 0]]
    assert n2.right_mult(n2.unit(1)).tolist() == [[0, 0], [0, 0]]


def test_from_brackets_rejects_bad_labels():
    with pytest.raises(ValueError):
        LeibnizAlgebra(np.zeros((2, 2, 2), dtype=object), basis=["a"])


@pytest.mark.parametrize("name", sorted(CONTEXTS))
def test_fixture_contexts_validate(name):
    r = CONTEXTS[name]
    assert validate_leibniz_g_representation(r).ok
    assert validate_leibniz(semidirect_product(r)).ok


def test_regular_of_leibniz_algebras_is_representation():
    for name, (alg, ok) in ALGEBRAS.items():
        if ok:
            assert validate_representation(ActionPair.regular(alg)).ok, name


def test_broken_action_is_reported():
    n2 = algebra("n2")
    act = ActionPair(n2, [[[0]], [[1]]], [[[0]], [[0]]])
    rep = validate_representation(act)
    assert not rep.ok and "rep_left" in rep.failed_checks()


def test_semidirect_product_refuses_invalid_context():
    n2 = algebra("n2")
    r = LeibnizGRepresentation(n2, LeibnizAlgebra.abelian(1), ActionPair(n2, [[[0]], [[1]]], [[[0]], [[0]]]))
    with pytest.raises(ValueError):
        semidirect_product(r)


def test_twisted_product_needs_crossed_map():
    r = CONTEXTS["n2_reg"]
    with pytest.raises(ValueError, match="identity fails"):
        twisted_semidirect_product(r, [[1, 0], [0, 1]])
    tw = twisted_semidirect_product(r, [[-1, 0], [0, -1]])
    assert validate_leibniz(tw).ok


def test_dimension_cap():
    big = LeibnizAlgebra.abelian(20)
    with pytest.raises(DimensionCapError):
        LeibnizGRepresentation(big, big)
    LeibnizGRepresentation(big, big, max_dim=40)


def test_zero_dimensional_module():
    r = LeibnizGRepresentation(algebra("n2"), LeibnizAlgebra.abelian(0))
    assert validate_leibniz_g_representation(r).ok
    assert semidirect_product(r).dim == 2


def test_homomorphism_projection_of_semidirect():
    r = CONTEXTS["x3_reg"]
    prod = semidirect_product(r)
    proj = np.zeros((2, 4), dtype=object)
    proj[0, 0] = proj[1, 1] = 1
    assert prod.is_homomorphism(proj, r.g)


@given(st.lists(st.integers(-1, 1), min_size=8, max_size=8))
def test_random_dim2_structures_against_naive(coeffs):
    c = np.array(coeffs, dtype=object).reshape(2, 2, 2)
    alg = LeibnizAlgebra(c)
    assert validate_leibniz(alg).ok == naive_is_leibniz(c.tolist())


def test_idempotent_fails_at_first_triple():
    assert (0, 0, 0) in validate_leibniz(algebra("idempotent")).failure_indices("leibniz")


def test_identity_left_action_on_nonabelian_fails():
    g = algebra("n2")
    eye = [[[1, 0], [0, 1]]] * 2
    zero = [[[0, 0], [0, 0]]] * 2
    assert not validate_representation(ActionPair(g, eye, zero)).ok
    assert validate_representation(ActionPair.zero(g, 3)).ok


def test_abelian_module_and_zero_action_cases():
    g = algebra("lie2")
    assert validate_leibniz_g_representation(LeibnizGRepresentation(g, algebra("n2"))).ok
    assert validate_leibniz_g_representation(LeibnizGRepresentation.regular(algebra("x1"))).ok


def test_semidirect_examples():
    a = semidirect_product(LeibnizGRepresentation(LeibnizAlgebra.abelian(2), LeibnizAlgebra.abelian(1)))
    assert a.dim == 3 and not a.structure.any()
    r = CONTEXTS["n2_reg"]
    p = semidirect_product(r)
    assert (p.structure[:2, :2, :2] == r.g.structure).all()
    proj = np.zeros((2, 4), dtype=object)
    proj[0, 0] = proj[1, 1] = 1
    incl = np.zeros((4, 2), dtype=object)
    incl[2, 0] = incl[3, 1] = 1
    assert p.is_homomorphism(proj, r.g)
    assert r.h.is_homomorphism(incl, p)


def test_twisted_examples():
    r = CONTEXTS["lie2_reg"]
    assert (twisted_semidirect_product(r, np.zeros((2, 2), dtype=object)).structure
            == semidirect_product(r).structure).all()
    r0 = CONTEXTS["lie2_lie2_zero"]
    H = np.eye(2, dtype=int).astype(object)
    tw = twisted_semidirect_product(r0, H)
    h = r0.h
    for i, p in product(range(2), range(2)):
        # [(e_i, 0), (0, f_p)]_H = [H e_i, f_p]  and  [(0, f_p), (e_i, 0)]_H = [f_p, H e_i]
        assert list(tw.structure[i, 2 + p][2:]) == list(h.bracket(H[:, i], h.unit(p)))
        assert list(tw.structure[2 + p, i][2:]) == list(h.bracket(h.unit(p), H[:, i]))
