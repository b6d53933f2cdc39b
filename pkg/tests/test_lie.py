from itertools import product

import pytest
from hypothesis import given, strategies as st

from cosetvoa.lie import CONVENTION, build_sl, bracket, form, parse_root, root_name, segment


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_dimensions(m):
    alg = build_sl(m)
    assert alg.dim == m * m - 1
    assert len(alg.roots.positive) == m * (m - 1) // 2


def test_positive_roots_ordered_by_height():
    alg = build_sl(4)
    heights = [sum(r) for r in alg.roots.positive]
    assert heights == sorted(heights)
    assert alg.roots.highest == (1, 1, 1)


def test_root_names_round_trip():
    for r in build_sl(4).roots.positive:
        assert parse_root(root_name(r), 3) == r
        assert parse_root("-" + root_name(r), 3) == tuple(-c for c in r)


def test_sl2_triple():
    alg = build_sl(2)
    e, f, h = alg.e((1,)), alg.f((1,)), alg.h((1,))
    assert bracket(e, f) == h
    assert bracket(h, e) == e * 2
    assert bracket(h, f) == f * -2
    assert form(e, f) == 1 and form(h, h) == 2


def test_structure_constant_signs():
    # defining-representation convention: c(a1, a2) = +1, c(a2, a1) = -1
    alg = build_sl(3)
    a1, a2 = segment(2, 1, 1), segment(2, 2, 2)
    assert alg.structure_constant(a1, a2) == 1
    assert alg.structure_constant(a2, a1) == -1
    assert alg.structure_constant(a1, a1) == 0
    alg4 = build_sl(4)
    # c(a_p, a_i + ... + a_{p-1}) = -1
    assert alg4.structure_constant(segment(3, 3, 3), segment(3, 1, 2)) == -1
    assert "defining-rep" in CONVENTION


def test_h_of_nonsimple_root_is_sum_of_coroots():
    alg = build_sl(4)
    h = alg.h(segment(3, 1, 3))
    assert h == alg.h(segment(3, 1, 1)) + alg.h(segment(3, 2, 2)) + alg.h(segment(3, 3, 3))
    assert alg.h(tuple(-c for c in segment(3, 1, 2))) == -alg.h(segment(3, 1, 2))


def test_theta_has_norm_two():
    for m in (2, 3, 4, 5):
        alg = build_sl(m)
        th = alg.roots.highest
        assert alg.roots.inner(th, th) == 2
        assert form(alg.h(th), alg.h(th)) == 2


def test_cartan_weights_match_brackets():
    alg = build_sl(4)
    for r in alg.roots.positive:
        for i in range(3):
            a = tuple(int(k == i) for k in range(3))
            assert bracket(alg.h(a), alg.e(r)) == alg.e(r) * alg.roots.inner(a, r)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
def test_jacobi_and_invariance_exhaustive(m):
    alg = build_sl(m)
    B = [alg.basis(i) for i in range(alg.dim)]
    # sample a fixed stride through all triples to keep m = 5 quick
    step = 1 if m <= 3 else 7
    triples = list(product(range(alg.dim), repeat=3))[::step]
    for a, b, c in triples:
        x, y, z = B[a], B[b], B[c]
        jac = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
        assert not jac.coeffs, (a, b, c)
        assert form(bracket(x, y), z) == form(x, bracket(y, z))


@given(st.integers(2, 5), st.data())
def test_antisymmetry_and_form_symmetry(m, data):
    alg = build_sl(m)
    a, b = data.draw(st.integers(0, alg.dim - 1)), data.draw(st.integers(0, alg.dim - 1))
    x, y = alg.basis(a), alg.basis(b)
    assert bracket(x, y) == -bracket(y, x)
    assert form(x, y) == form(y, x)
