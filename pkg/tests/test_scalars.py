from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from volform.scalars import (GaussianRational, Poly, RingError, Trig, derive, integrate_torus,
                             poly_ring, primitive_in_axis, trig_ring)
from volform.textio import format_coeff, parse_expr

R3 = poly_ring(3)
T3 = trig_ring(3)

fractions = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 12))
exps = st.tuples(*[st.integers(0, 3)] * 3)
polys = st.dictionaries(exps, fractions, max_size=4).map(lambda d: Poly(3, d))
modes = st.tuples(*[st.integers(-2, 2)] * 3)
gaussians = st.builds(GaussianRational, fractions, fractions)
trigs = st.dictionaries(modes, gaussians, max_size=4).map(lambda d: Trig(3, d))


def test_derive_examples():
    assert derive(R3.monomial((2, 1, 0)), 0) == R3.monomial((1, 1, 0), 2)
    assert derive(T3.mode((0, 0, 1)), 2) == T3.mode((0, 0, 1))
    assert derive(R3.one(), 0) == R3.zero()


def test_integrate_examples():
    assert integrate_torus(T3.mode((0, 0, 1))) == 0
    assert integrate_torus(T3.const(Fraction(3, 2))) == Fraction(3, 2)
    assert integrate_torus(T3.mode((0, 0, 1)) * T3.mode((0, 0, -1))) == 1


def test_primitive_examples():
    x1, x2 = R3.var(0), R3.var(1)
    assert primitive_in_axis(x1, 0) == R3.monomial((2, 0, 0), Fraction(1, 2))
    assert primitive_in_axis(R3.one(), 1) == x2
    assert primitive_in_axis(x1 * x2 * x2, 1) == R3.monomial((1, 3, 0), Fraction(1, 3))


def test_axis_out_of_range():
    with pytest.raises(RingError):
        derive(R3.var(0), 3)


def test_gaussian_arithmetic():
    z = GaussianRational(1, 2)
    assert z * z.inverse() == 1
    assert (z * z.conjugate()).im == 0


@given(polys, polys, st.integers(0, 2))
def test_poly_product_rule(f, g, j):
    assert (f * g).derive(j) == f.derive(j) * g + f * g.derive(j)


@given(trigs, trigs, st.integers(0, 2))
def test_trig_product_rule(f, g, j):
    assert (f * g).derive(j) == f.derive(j) * g + f * g.derive(j)


@given(polys, st.integers(0, 2))
def test_primitive_is_right_inverse(f, j):
    assert primitive_in_axis(f, j).derive(j) == f


@given(trigs)
def test_stokes_on_torus(f):
    assert all(integrate_torus(f.derive(j)) == 0 for j in range(3))


@settings(max_examples=50)
@given(polys)
def test_poly_text_roundtrip(f):
    assert parse_expr(format_coeff(f), R3) == f or (not f and parse_expr(format_coeff(f), R3) == 0)


@settings(max_examples=50)
@given(trigs)
def test_trig_text_roundtrip(f):
    back = parse_expr(format_coeff(f), T3)
    assert back == f or (not f and back == 0)
