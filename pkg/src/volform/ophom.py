"""Linear differential operators on polynomial forms and their factorisation through d.

An operator on k-forms with values in ``Q[x]^w`` is a finite sum

    D(alpha) = sum_{I, sigma} (d_sigma alpha_I) T_{I, sigma}

with ``T_{I, sigma}`` a length-w tuple of polynomials.  If ``D o d = 0`` then
``D = Q o d`` where Q comes from the Euler-field induction

    D_{l+1} = D_l + [(D - D_l) iota_E]^{<=l} d / (k+l+1)
    Q_{l+1} = Q_l + [(D - D_l) iota_E]^{<=l}     / (k+l+1)

started at ``D_0 = Q_0 = 0``.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .forms import DegreeError, Form, basis_form, d, lie_derivative, vector_field
from .scalars import Poly, poly_ring

Index = Tuple[int, ...]
Multi = Tuple[int, ...]
Output = Tuple[Poly, ...]


class OperatorError(ValueError):
    pass


def _zero_out(n: int, width: int) -> Output:
    return tuple(Poly(n, {}) for _ in range(width))


def _add_out(a: Output, b: Output) -> Output:
    return tuple(x + y for x, y in zip(a, b))


def _scale_out(a: Output, c) -> Output:
    return tuple(x * c for x in a)


def _mul_out(a: Output, f: Poly) -> Output:
    return tuple(x * f for x in a)


def _is_zero_out(a: Output) -> bool:
    return not any(a)


class DiffOp:
    """Immutable operator on k-forms in dimension n with ``width`` output slots."""

    def __init__(self, n: int, k: int, width: int, terms: Dict[Tuple[Index, Multi], Sequence] = None):
        self.n, self.k, self.width = n, k, width
        clean = {}
        for (I, sigma), val in (terms or {}).items():
            I, sigma = tuple(I), tuple(sigma)
            if len(I) != k or tuple(sorted(set(I))) != I or any(not 0 <= i < n for i in I):
                raise OperatorError(f"bad form index {I} for degree {k}")
            if len(sigma) != n or any(s < 0 for s in sigma):
                raise OperatorError(f"bad multi-index {sigma}")
            val = tuple(val)
            if len(val) != width:
                raise OperatorError(f"output must have {width} slots")
            if not _is_zero_out(val):
                clean[(I, sigma)] = val
        self.terms = dict(sorted(clean.items()))

    @property
    def order(self) -> int:
        return max((sum(s) for _, s in self.terms), default=0)

    def _like(self, terms, k=None) -> "DiffOp":
        return DiffOp(self.n, self.k if k is None else k, self.width, terms)

    def _check(self, other: "DiffOp"):
        if (self.n, self.k, self.width) != (other.n, other.k, other.width):
            raise OperatorError("operators act on different spaces")

    def __add__(self, other: "DiffOp") -> "DiffOp":
        self._check(other)
        out = dict(self.terms)
        for key, v in other.terms.items():
            out[key] = _add_out(out[key], v) if key in out else v
        return self._like(out)

    def __neg__(self) -> "DiffOp":
        return self._like({key: _scale_out(v, -1) for key, v in self.terms.items()})

    def __sub__(self, other: "DiffOp") -> "DiffOp":
        return self + (-other)

    def scale(self, c) -> "DiffOp":
        return self._like({key: _scale_out(v, c) for key, v in self.terms.items()})

    def __eq__(self, other):
        return (isinstance(other, DiffOp) and (self.n, self.k, self.width) == (other.n, other.k, other.width)
                and self.terms == other.terms)

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return f"DiffOp(n={self.n}, k={self.k}, width={self.width}, terms={len(self.terms)})"


def zero_op(n: int, k: int, width: int) -> DiffOp:
    return DiffOp(n, k, width, {})


def apply(D: DiffOp, a: Form) -> Output:
    if a.degree != D.k or a.n != D.n:
        raise DegreeError(f"operator acts on {D.k}-forms in dimension {D.n}")
    if a.ring.kind != "poly":
        raise OperatorError("operators act on polynomial forms")
    out = _zero_out(D.n, D.width)
    for (I, sigma), T in D.terms.items():
        c = a[I]
        if not c:
            continue
        c = c.derive_multi(sigma)
        if c:
            out = _add_out(out, _mul_out(T, c))
    return out


def _accumulate(out: dict, key, val: Output):
    out[key] = _add_out(out[key], val) if key in out else val


def compose_d(Q: DiffOp) -> DiffOp:
    """``alpha -> Q(d alpha)`` on (k-1)-forms, where Q acts on k-forms."""
    if Q.k == 0:
        raise DegreeError("nothing maps into 0-forms under d")
    out: dict = {}
    for (J, sigma), T in Q.terms.items():
        for p, j in enumerate(J):
            # (d alpha)_J contains (-1)^p d_j alpha_{J minus j}
            I = J[:p] + J[p + 1:]
            s = list(sigma)
            s[j] += 1
            _accumulate(out, (I, tuple(s)), _scale_out(T, -1) if p % 2 else T)
    return DiffOp(Q.n, Q.k - 1, Q.width, out)


def compose_iota_euler(D: DiffOp) -> DiffOp:
    """``omega -> D(iota_E omega)`` on (k+1)-forms, product rule applied."""
    n = D.n
    if D.k + 1 > n:
        raise DegreeError("no forms of degree above n")
    R = poly_ring(n)
    out: dict = {}
    for (I, sigma), T in D.terms.items():
        for mu in range(n):
            if mu in I:
                continue
            J = tuple(sorted(I + (mu,)))
            p = J.index(mu)
            # (iota_E omega)_I contains (-1)^p x_mu omega_J
            sgn = -1 if p % 2 else 1
            _accumulate(out, (J, sigma), _mul_out(T, R.var(mu) * sgn))
            if sigma[mu]:
                s = list(sigma)
                s[mu] -= 1
                _accumulate(out, (J, tuple(s)), _scale_out(T, sgn * sigma[mu]))
    return DiffOp(n, D.k + 1, D.width, out)


def truncate(D: DiffOp, l: int) -> DiffOp:
    """Keep the terms with ``|sigma| <= l``."""
    if l < 0:
        raise OperatorError("truncation order must be >= 0")
    return D._like({key: v for key, v in D.terms.items() if sum(key[1]) <= l})


def multi_indices(n: int, max_deg: int) -> List[Multi]:
    """All exponents of total degree <= max_deg, ordered by degree."""
    out = [e for e in itertools.product(range(max_deg + 1), repeat=n) if sum(e) <= max_deg]
    return sorted(out, key=lambda e: (sum(e), e))


def _falling(tau: Multi, sigma: Multi) -> Fraction:
    r = 1
    for t, s in zip(tau, sigma):
        r *= factorial(t) // factorial(t - s)
    return r


def monomial_forms(n: int, k: int, max_deg: int) -> Iterable[Tuple[Index, Multi, Form]]:
    R = poly_ring(n)
    for I in itertools.combinations(range(n), k):
        for tau in multi_indices(n, max_deg):
            yield I, tau, basis_form(R, I, R.monomial(tau))


def truncate_by_evaluation(D: DiffOp, l: int) -> DiffOp:
    """Recover ``[D]^{<=l}`` from the values of D on monomial forms of degree <= l.

    ``D(x^tau dx_I) = sum_{sigma <= tau} tau!/(tau-sigma)! x^{tau-sigma} T_{I,sigma}``
    is triangular in tau, so the T are solved for in order of increasing |tau|.
    """
    if l < 0:
        raise OperatorError("truncation order must be >= 0")
    R = poly_ring(D.n)
    found: dict = {}
    for I, tau, a in monomial_forms(D.n, D.k, l):
        val = apply(D, a)
        for (J, sigma), T in list(found.items()):
            if J != I or sigma == tau or any(s > t for s, t in zip(sigma, tau)):
                continue
            shift = R.monomial(tuple(t - s for t, s in zip(tau, sigma)), _falling(tau, sigma))
            val = _add_out(val, _scale_out(_mul_out(T, shift), -1))
        T = _scale_out(val, Fraction(1, _falling(tau, tau)))
        if not _is_zero_out(T):
            found[(I, tau)] = T
    return D._like(found)


def annihilates_up_to(D: DiffOp, l: int) -> bool:
    """True iff D kills every k-form whose coefficients have degree <= l."""
    return all(_is_zero_out(apply(D, a)) for _, _, a in monomial_forms(D.n, D.k, l))


def kills_exact(D: DiffOp, max_deg: int) -> bool:
    """``D o d = 0`` on all monomial (k-1)-forms of degree <= max_deg."""
    if D.k == 0:
        return True
    return all(_is_zero_out(apply(D, d(a))) for _, _, a in monomial_forms(D.n, D.k - 1, max_deg))


@dataclass
class Stage:
    l: int
    property1: bool
    property2: bool
    terms_D: int
    terms_Q: int


@dataclass
class Factorisation:
    Q: DiffOp
    stages: List[Stage]
    verified: bool

    @property
    def ok(self) -> bool:
        return self.verified and all(s.property1 and s.property2 for s in self.stages)


def factor_through_d(D: DiffOp) -> Factorisation:
    """Q on (k+1)-forms with ``Q o d = D``; every stage records Properties 1 and 2."""
    if D.k < 1:
        raise OperatorError("factor_through_d needs k >= 1")
    if D.k >= D.n:
        raise OperatorError("there are no (k+1)-forms to factor through")
    r = D.order
    if not kills_exact(D, r + 2):
        raise OperatorError("precondition D o d = 0 fails")
    k = D.k
    Dl = zero_op(D.n, k, D.width)
    Ql = zero_op(D.n, k + 1, D.width)
    stages = []
    l = 0
    while True:
        p1 = compose_d(Ql) == Dl
        p2 = annihilates_up_to(D - Dl, l)
        stages.append(Stage(l, p1, p2, len(Dl.terms), len(Ql.terms)))
        if Dl == D:
            break
        if l > r + 1:
            raise RuntimeError("Euler induction did not terminate within order + 1 steps")
        A = truncate(compose_iota_euler(D - Dl), l).scale(Fraction(1, k + l + 1))
        Ql = Ql + A
        Dl = Dl + compose_d(A)
        l += 1
    verified = all(apply(Ql, d(a)) == apply(D, a) for _, _, a in monomial_forms(D.n, k, r + 2))
    return Factorisation(Ql, stages, verified)


def euler_field(n: int):
    R = poly_ring(n)
    return vector_field(R, [R.var(j) for j in range(n)])


def euler_eigencheck(k: int, l: int, n: int) -> bool:
    """``L_E alpha = (k+l+1) alpha`` on every monomial k-form of coefficient degree l+1."""
    if not 0 <= k <= n or l < 0:
        return True
    E = euler_field(n)
    R = poly_ring(n)
    for I in itertools.combinations(range(n), k):
        for tau in multi_indices(n, l + 1):
            if sum(tau) != l + 1:
                continue
            a = basis_form(R, I, R.monomial(tau))
            if lie_derivative(E, a) != a.scale(k + l + 1):
                return False
    return True


# -- JSON --------------------------------------------------------------------

def to_json(D: DiffOp) -> dict:
    from .textio import format_poly
    return {
        "n": D.n, "k": D.k, "width": D.width,
        "terms": [{"I": [i + 1 for i in I], "sigma": list(s), "value": [format_poly(p) for p in T]}
                  for (I, s), T in D.terms.items()],
    }


def from_json(obj) -> DiffOp:
    from .textio import parse_expr
    if isinstance(obj, str):
        obj = json.loads(obj)
    try:
        n, k = int(obj["n"]), int(obj["k"])
        raw = obj.get("terms", [])
        values = [t["value"] if isinstance(t["value"], list) else [t["value"]] for t in raw]
        width = int(obj.get("width", len(values[0]) if raw else 1))
        R = poly_ring(n)
        terms: dict = {}
        for t, value in zip(raw, values):
            I = tuple(sorted(i - 1 for i in t["I"]))
            vals = []
            for v in value:
                p = parse_expr(str(v), R)
                if not isinstance(p, Poly):
                    p = R.const(p)
                vals.append(p)
            _accumulate(terms, (I, tuple(t["sigma"])), tuple(vals))
    except (KeyError, TypeError, IndexError) as exc:
        raise OperatorError(f"malformed operator JSON: {exc}") from None
    return DiffOp(n, k, width, terms)
