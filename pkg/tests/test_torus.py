import random

import pytest

from volform import randgen as rg
from volform import torus as tor
from volform.forms import d, flat, function_form
from volform.scalars import trig_ring

T = trig_ring(3)


@pytest.fixture
def Q(P):
    return lambda text: P(text, "trig")


def test_exactness(Q):
    assert not tor.is_exact_divfree(Q("e1"))
    assert tor.is_exact_divfree(Q("e[0,0,1] e1"))
    assert tor.is_exact_divfree(Q("0 e1"))


def test_potential(Q):
    a = tor.potential(Q("e[0,0,1] e1"))
    assert a == -Q("e[0,0,1] dx2")
    assert not tor.potential(Q("0 e1"))


def test_potential_second_example(Q):
    X = Q("e[1,0,0] e2")
    a = tor.potential(X)
    assert d(a) == flat(X)
    assert a == -Q("e[1,0,0] dx3")
    # e[1,0,0] dx1 is closed, so it cannot be a potential of a nonzero field
    assert not d(Q("e[1,0,0] dx1"))


def test_homotopy_identity():
    rng = random.Random(5)
    for _ in range(20):
        w = rg.form(rng, T, rng.randint(0, 3), freq=2)
        back = d(tor.homotopy(w)) + tor.homotopy(d(w)) if w.degree else tor.homotopy(d(w))
        assert back == w - tor.constant_mode(w)


def test_normal_form(Q):
    assert tor.normal_form(Q("dx1")).rep == Q("dx1")
    assert not tor.normal_form(d(function_form(Q("e[1,0,0]")))).rep
    assert tor.normal_form(-Q("e[0,0,1] dx2")).rep == -Q("e[0,0,1] dx2")


def test_central_bracket(Q):
    A = tor.normal_form(-Q("e[0,0,1] dx2"))
    B = tor.normal_form(tor.potential(Q("e[0,0,-1] e2")))
    assert tor.central_bracket(A, B).rep == -Q("dx3")
    assert not tor.central_bracket(tor.normal_form(Q("dx1")), B).rep
    assert tor.central_bracket(A, B).is_central()


def test_lichnerowicz(Q):
    s = Q("dx1^dx2")
    X, Y = Q("e[0,0,1] e1"), Q("e[0,0,-1] e2")
    assert tor.lichnerowicz(s, X, Y) == 1
    assert tor.lichnerowicz(s, Q("e1"), Q("e3")) == 0
    assert tor.lichnerowicz(s, X, X) == 0
    with pytest.raises(tor.TorusError):
        tor.lichnerowicz(Q("e[1,0,0] dx2^dx3"), X, Y)


def test_cycle_cocycle(Q):
    X, Y = Q("e[0,0,1] e1"), Q("e[0,0,-1] e2")
    assert tor.cycle_cocycle((0, 1), X, Y) == -1
    assert tor.cycle_cocycle((1, 2), X, Y) == 0
    assert tor.cycle_cocycle((0, 1), X, X) == 0


def test_cocycle_vs_bracket(Q):
    s = Q("dx1^dx2")
    a = -Q("e[0,0,1] dx2")
    b = tor.potential(Q("e[0,0,-1] e2"))
    assert tor.cocycle_vs_bracket(s, a, b) == (1, 1)
    assert tor.cocycle_vs_bracket(s, Q("dx1"), b) == (0, 0)
    rng = random.Random(2)
    for _ in range(10):
        X, Y = rg.exact_divfree(rng, T), rg.exact_divfree(rng, T)
        left, right = tor.cocycle_vs_bracket(Q("dx1^dx3"), tor.potential(X), tor.potential(Y))
        assert left == right


def test_pairing():
    assert tor.pairing_rank(3) == 3
    M = tor.pairing_matrix(3)
    assert all(M[i][j] == (1 if i == j else 0) for i in range(3) for j in range(3))


def test_poly_rejected(P):
    with pytest.raises(tor.TorusError):
        tor.potential(P("e1"))
