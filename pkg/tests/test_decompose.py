import random
from math import comb

import pytest

from volform import decompose as dec
from volform import randgen as rg
from volform.forms import function_form, d, hamiltonian_field, iota, leibniz_bracket, volume_form
from volform.scalars import poly_ring, trig_ring


def test_bracket_witness_example(P):
    w = dec.commutator_decompose(P("x1 e[2,3]"))
    assert w.pairs == ((P("x2 dx3"), P("1/2 x1^2 dx1")),)
    assert w.verify() and w.count == 1


def test_bracket_witness_zero(P):
    assert dec.commutator_decompose(P("0 e[1,2]")).pairs == ()


def test_bracket_witness_two_terms(P):
    w = dec.commutator_decompose(P("e[1,2] + x3 e[1,3]"))
    assert w.verify() and w.count == 2


def test_bounds():
    assert dec.bracket_bound(3) == comb(3, 2) * 4
    assert dec.square_bound(4) == 4 * comb(4, 3)


def test_square_example(P):
    w = dec.square_decompose(function_form(P("x3")))
    (p,) = w.potentials
    assert p.alpha == P("dx3 + x1 x3 dx2")
    assert hamiltonian_field(p.alpha) == P("-x1 e1 + x3 e3")
    assert iota(hamiltonian_field(p.alpha), p.alpha) == function_form(P("x3"))
    assert p.check_factorisation()


def test_square_zero_and_n4(P):
    assert dec.square_decompose(function_form(poly_ring(3).zero())).potentials == ()
    w = dec.square_decompose(P("x4 dx4", n=4))
    assert w.verify() and w.count <= dec.square_bound(4)


def test_squares_of_exact(P):
    alphas = dec.squares_of_exact(P("dx3"), function_form(P("x3")))
    assert alphas == [P("dx3 + x1 x3 dx2")]
    assert leibniz_bracket(alphas[0], alphas[0]) == P("dx3")
    b = function_form(P("x1 x2"))
    total = sum((leibniz_bracket(a, a) for a in dec.squares_of_exact(d(b), b)), P("0 dx1"))
    assert total == P("x2 dx1 + x1 dx2")
    with pytest.raises(dec.DecompositionError):
        dec.squares_of_exact(P("dx1"), b)


def test_trig_rejected(P):
    with pytest.raises(dec.DecompositionError):
        dec.commutator_decompose(P("e[1,2]", "trig"))


@pytest.mark.parametrize("n", [3, 4, 5])
def test_random_witnesses(n):
    rng = random.Random(n)
    R = poly_ring(n)
    for _ in range(10):
        B = rg.multivec(rng, R, 2, 3, components=3)
        w = dec.commutator_decompose(B)
        assert w.verify() and w.count <= dec.bracket_bound(n)
        b = rg.form(rng, R, n - 3, 3, components=2)
        s = dec.square_decompose(b)
        assert s.verify() and s.count <= dec.square_bound(n)
        assert all(p.check_factorisation() for p in s.potentials)
