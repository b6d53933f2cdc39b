from fractions import Fraction

import pytest

from cosetvoa.coset import CosetContext, PairingError
from cosetvoa.scalars import RatFunc
from props import check_pairing_symmetry

n = RatFunc.gen()


def test_omega_alpha_coefficients(ctx1):
    V = ctx1.engine
    h = ctx1.alg.h((1,))
    w = ctx1.omega_alpha((1,))
    (mono,) = V.word([(h, -1), (h, -1)]).terms
    assert w.coefficient(mono) == -1 / (2 * n * (n + 2))
    (ef,) = V.word([("e[a1]", -1), ("f[a1]", -1)]).terms
    assert w.coefficient(ef) == 1 / (n + 2)
    assert w.weight() == 2 and ctx1.omega_alpha((-1,)) == w


def test_omega_alpha_is_virasoro(ctx2):
    V = ctx2.engine
    for a in ctx2.positive_roots:
        w = ctx2.omega_alpha(a)
        assert V.state_mode(w, 3, w) == V.vacuum() * ((n - 1) / (n + 2))
        assert V.state_mode(w, 1, w) == w * 2
        assert V.state_mode(w, 0, w) == V.translate(w)


def test_central_charge_formula(ctx2):
    V = ctx2.engine
    w = ctx2.omega()
    assert V.state_mode(w, 3, w) == V.vacuum() * (ctx2.central_charge() / 2)
    assert V.state_mode(w, 1, w) == w * 2


def test_central_charge_values():
    assert CosetContext(1, 3).central_charge() == Fraction(4, 5)
    assert CosetContext(1, None).central_charge() == 2 * (n - 1) / (n + 2)
    assert CosetContext(2, 1).central_charge() == 0


def test_W_for_sl2_is_W_alpha(ctx1):
    assert ctx1.W() == ctx1.W_alpha((1,))
    assert ctx1.X(0) == ctx1.engine.zero()


def test_W_is_primary_of_weight_three(ctx2):
    V, w, W = ctx2.engine, ctx2.omega(), ctx2.W()
    assert W.weight() == 3
    assert V.state_mode(w, 1, W) == W * 3
    assert not V.state_mode(w, 2, W) and not V.state_mode(w, 3, W)


@pytest.mark.parametrize("name", ["omega", "W"])
def test_commutant_membership(ctx2, name):
    v = getattr(ctx2, name)()
    rep = ctx2.commutant_membership(v)
    assert rep["annihilated"], rep["failures"]


def test_non_member_reported(ctx2):
    v = ctx2.engine.word([("e[a1]", -1)])
    rep = ctx2.commutant_membership(v)
    assert not rep["annihilated"] and rep["failures"]["h[a1]"] == [0]


def test_pairing_examples(ctx1):
    V = ctx1.engine
    assert ctx1.invariant_pairing(V.vacuum(), V.vacuum()) == 1
    w = ctx1.omega()
    assert ctx1.invariant_pairing(w, w) == ctx1.central_charge() / 2
    with pytest.raises(PairingError):
        ctx1.invariant_pairing(w, ctx1.W())


def test_pairing_symmetry(ctx2):
    V = ctx2.engine
    assert check_pairing_symmetry(V, ctx2.W(), ctx2.X(2)) is None
    assert check_pairing_symmetry(V, ctx2.omega(), ctx2.omega_alpha(ctx2.root(1, 2))) is None


def test_named_and_bad_index(ctx2):
    names = ctx2.named()
    assert {"omega", "W", "X(0)", "X(2)", "W_alpha[a1+a2]"} <= set(names)
    with pytest.raises(ValueError):
        ctx2.X(3)
    with pytest.raises(ValueError):
        CosetContext(0)
