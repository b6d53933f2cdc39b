import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from cosetvoa.affine import pbw_basis
from cosetvoa.quotient import (ResourceLimitError, coset_dims, generation_check, lattice_oracle_sl2_level1,
                               parafermion_oracle, partitions_min_part, qseries, simple_quotient)


@pytest.fixture(scope="module")
def L21():
    return simple_quotient(2, 1, 5)


@pytest.fixture(scope="module")
def L23():
    return simple_quotient(2, 3, 6)


def test_level_one_matches_lattice(L21):
    assert L21.dims() == lattice_oracle_sl2_level1(5) == [1, 3, 4, 7, 13, 19]


def test_level_three_dims(L23):
    assert L23.dims() == [1, 3, 9, 22, 42, 81, 151]
    # nothing is removed below the singular vector
    assert L23.dims()[:4] == [len(pbw_basis(3, d)) for d in range(4)]
    assert L23.ideal_dims()[4] == 51 - 42


def test_singular_vector_is_zero(L23):
    V = L23.engine
    v = V.word([("e[a1]", -1)] * 4)
    assert L23.in_ideal(v) and not L23.reduce(v)
    assert not L23.in_ideal(V.word([("e[a1]", -1)] * 3))


def test_ideal_is_stable_under_modes(L23):
    V = L23.engine
    d = 5
    rng = random.Random(0)
    for b in rng.sample(pbw_basis(3, d), 15):
        state = V.word([(x, m) for m, x in b])
        r = state - L23.reduce(state)          # an element of the ideal
        assert L23.in_ideal(r)
        for x in range(3):
            for k in (-1, 0, 1, 2):
                if 0 <= d - k <= 6:
                    assert L23.in_ideal(V.current_mode(x, k, r))


def test_weight_one_is_adjoint(L21):
    assert L21.dims()[1] == 3
    # charges are root-lattice coordinates
    assert L21.charge_dims(1) == {(1,): 1, (0,): 1, (-1,): 1}


def test_resource_limit():
    with pytest.raises(ResourceLimitError):
        simple_quotient(3, 1, 8, budget=1000)


def test_bad_level():
    with pytest.raises(ValueError):
        simple_quotient(2, Fraction(1, 2), 3)


def test_parafermion_dims(L23):
    cd = coset_dims(2, 3, max_weight=6, quotient=L23)
    assert cd.dims == [1, 0, 1, 2, 3, 4, 7]
    assert cd.dims == parafermion_oracle(2, 3, 6, quotient=L23)
    assert cd.as_dict()["qseries"] == "1 + q^2 + 2q^3 + 3q^4 + 4q^5 + 7q^6"


def test_level_one_parafermion_is_trivial(L21):
    assert coset_dims(2, 1, max_weight=5, quotient=L21).dims == [1, 0, 0, 0, 0, 0]


@settings(max_examples=5, deadline=None)
@given(st.randoms(use_true_random=False))
def test_constraint_order_does_not_matter(L23, rnd):
    def shuffle(cs):
        cs = list(cs)
        rnd.shuffle(cs)
        return cs
    assert coset_dims(2, 3, max_weight=5, quotient=L23, order=shuffle).dims == [1, 0, 1, 2, 3, 4]


def test_levi_and_unknown_sub():
    cd = coset_dims(3, 1, sub="levi", max_weight=3)
    assert cd.dims[0] == 1 and cd.sub == "levi"
    with pytest.raises(ValueError):
        coset_dims(2, 1, sub="borel", max_weight=2)


def test_generation_level_three():
    rep = generation_check(2, 3, 6)
    assert rep.ok and all(rep.contained)
    assert rep.omega_spans_weight2 and rep.W_in_weight3 and rep.W_nonzero
    assert rep.generated == rep.kernel == [1, 0, 1, 2, 3, 4, 7]


def test_series_helpers():
    assert partitions_min_part(6, 2) == [1, 0, 1, 1, 2, 2, 4]
    assert qseries([1, 0, -2, 1]) == "1 - 2q^2 + q^3"
    assert qseries([0, 0]) == "0"
