"""Seeded random instances.

All draws go through one ``random.Random``.  Rationals are ``p/q`` with
``p`` uniform in ``[-bound, bound]`` and ``q`` uniform in ``[1, bound]``;
Gaussian coefficients draw the real part then the imaginary part this way.
Polynomial terms draw each exponent uniformly and reject total degree above
the cap; trig modes draw each frequency uniformly in ``[-freq, freq]``.
"""
from __future__ import annotations

import itertools
import random
from fractions import Fraction
from typing import List

from .forms import Form, MultiVec, d, sharp
from .scalars import GaussianRational, Poly, Trig


def rational(rng: random.Random, bound: int = 4) -> Fraction:
    return Fraction(rng.randint(-bound, bound), rng.randint(1, bound))


def nonzero_rational(rng: random.Random, bound: int = 4) -> Fraction:
    while True:
        q = rational(rng, bound)
        if q:
            return q


def gaussian(rng: random.Random, bound: int = 4) -> GaussianRational:
    return GaussianRational(rational(rng, bound), rational(rng, bound))


def poly(rng: random.Random, n: int, deg: int = 3, terms: int = 3, bound: int = 4) -> Poly:
    out = {}
    for _ in range(terms):
        while True:
            e = tuple(rng.randint(0, deg) for _ in range(n))
            if sum(e) <= deg:
                break
        out[e] = out.get(e, 0) + rational(rng, bound)
    return Poly(n, out)


def homogeneous_poly(rng: random.Random, n: int, deg: int, terms: int = 3, bound: int = 4) -> Poly:
    monos = [e for e in itertools.product(range(deg + 1), repeat=n) if sum(e) == deg]
    out = {}
    for _ in range(terms):
        e = rng.choice(monos)
        out[e] = out.get(e, 0) + rational(rng, bound)
    return Poly(n, out)


def trig(rng: random.Random, n: int, freq: int = 2, terms: int = 3, bound: int = 4) -> Trig:
    out = {}
    for _ in range(terms):
        k = tuple(rng.randint(-freq, freq) for _ in range(n))
        out[k] = out.get(k, GaussianRational(0)) + gaussian(rng, bound)
    return Trig(n, out)


def coefficient(rng: random.Random, ring, deg: int = 3, freq: int = 2, terms: int = 3):
    if ring.kind == "poly":
        return poly(rng, ring.n, deg, terms)
    return trig(rng, ring.n, freq, terms)


def _indices(n: int, degree: int):
    return list(itertools.combinations(range(n), degree))


def form(rng: random.Random, ring, degree: int, deg: int = 3, freq: int = 2,
         components: int = 2, terms: int = 2) -> Form:
    idx = _indices(ring.n, degree)
    out = {}
    for I in rng.sample(idx, min(components, len(idx))):
        out[I] = coefficient(rng, ring, deg, freq, terms)
    return Form(ring, degree, out)


def multivec(rng: random.Random, ring, degree: int, deg: int = 3, freq: int = 2,
             components: int = 2, terms: int = 2) -> MultiVec:
    idx = _indices(ring.n, degree)
    out = {}
    for I in rng.sample(idx, min(components, len(idx))):
        out[I] = coefficient(rng, ring, deg, freq, terms)
    return MultiVec(ring, degree, out)


def vector_field(rng: random.Random, ring, deg: int = 3, freq: int = 2, terms: int = 2) -> MultiVec:
    return multivec(rng, ring, 1, deg, freq, components=ring.n, terms=terms)


def exact_divfree(rng: random.Random, ring, deg: int = 3, freq: int = 2, terms: int = 2) -> MultiVec:
    """``X_alpha`` for a random (n-2)-form alpha."""
    alpha = form(rng, ring, ring.n - 2, deg + 1, freq, components=2, terms=terms)
    return sharp(d(alpha))


def divfree(rng: random.Random, ring, deg: int = 3, freq: int = 2, terms: int = 2) -> MultiVec:
    """An exact field plus a random constant field (not exact on the torus)."""
    X = exact_divfree(rng, ring, deg, freq, terms)
    const = {(i,): ring.const(rational(rng)) for i in range(ring.n) if rng.random() < 0.7}
    return X + MultiVec(ring, 1, {k: v for k, v in const.items() if v})


def constant_form(rng: random.Random, ring, degree: int) -> Form:
    out = {I: ring.const(rational(rng)) for I in _indices(ring.n, degree)}
    return Form(ring, degree, {k: v for k, v in out.items() if v})


def closed_constant_2form(rng: random.Random, ring) -> Form:
    return constant_form(rng, ring, 2)


def choose(rng: random.Random, items: List):
    return items[rng.randrange(len(items))]


def diffop(rng: random.Random, n: int, k: int, order: int = 3, width: int = 1,
           terms: int = 3, coeff_deg: int = 2):
    """Random operator on k-forms: ``terms`` (I, sigma) pairs with |sigma| <= order."""
    from .ophom import DiffOp, multi_indices
    idx = _indices(n, k)
    sigmas = multi_indices(n, order)
    out = {}
    for _ in range(terms):
        key = (rng.choice(idx), rng.choice(sigmas))
        out[key] = tuple(poly(rng, n, coeff_deg, 2) for _ in range(width))
    return DiffOp(n, k, width, out)
