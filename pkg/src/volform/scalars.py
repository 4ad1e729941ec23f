"""Exact coefficient rings.

Two differential algebras are provided, both over exact scalars:

* :class:`Poly` -- multivariate polynomials on R^n with rational
  coefficients and the partial derivatives d/dx_j.
* :class:`Trig` -- finite Fourier series on the unit torus T^n with
  Gaussian-rational coefficients.  The derivation ``D_j`` acts mode-wise by
  ``D_j e_k = k_j e_k`` (the factor ``2*pi*i`` is absorbed) and the total
  volume is normalised to one, so ``integrate`` returns the zero mode.

Every element is immutable; arithmetic never rounds.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from numbers import Rational as _RationalABC
from typing import Dict, Iterable, Mapping, Tuple, Union

Exponent = Tuple[int, ...]


class RingError(ValueError):
    """Raised on axis errors and mixing of incompatible rings."""


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, _RationalABC)):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    if isinstance(x, GaussianRational):
        if x.im != 0:
            raise RingError(f"{x} is not rational")
        return x.re
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


class GaussianRational:
    """An element ``re + i*im`` of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", as_fraction(re))
        object.__setattr__(self, "im", as_fraction(im))

    def __setattr__(self, name, value):
        raise AttributeError("GaussianRational is immutable")

    @classmethod
    def coerce(cls, x) -> "GaussianRational":
        if isinstance(x, GaussianRational):
            return x
        return cls(as_fraction(x), 0)

    def __add__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def __sub__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def inverse(self) -> "GaussianRational":
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("inverse of zero")
        return GaussianRational(self.re / nrm, -self.im / nrm)

    def __truediv__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except TypeError:
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        return GaussianRational.coerce(other) * self.inverse()

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        try:
            o = GaussianRational.coerce(other)
        except (TypeError, RingError):
            return NotImplemented
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if self.im == 0:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self):
        return format_gaussian(self)


def format_fraction(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_gaussian(z: GaussianRational) -> str:
    if z.im == 0:
        return format_fraction(z.re)
    if z.re == 0:
        return f"{format_fraction(z.im)} i"
    sign = "+" if z.im > 0 else "-"
    return f"({format_fraction(z.re)} {sign} {format_fraction(abs(z.im))} i)"


# --------------------------------------------------------------------------
# rings

@dataclass(frozen=True)
class PolyRing:
    """Polynomial ring Q[x_1..x_n]."""

    n: int
    kind = "poly"

    def __post_init__(self):
        if self.n < 1:
            raise RingError("dimension must be positive")

    def zero(self) -> "Poly":
        return Poly(self.n, {})

    def one(self) -> "Poly":
        return self.const(1)

    def const(self, c) -> "Poly":
        return Poly(self.n, {(0,) * self.n: as_fraction(c)})

    def var(self, j: int) -> "Poly":
        """The coordinate function x_{j+1} (``j`` is 0-based)."""
        _check_axis(j, self.n)
        e = [0] * self.n
        e[j] = 1
        return Poly(self.n, {tuple(e): Fraction(1)})

    def monomial(self, exp: Iterable[int], c=1) -> "Poly":
        return Poly(self.n, {tuple(exp): as_fraction(c)})

    def scalar(self, c) -> Fraction:
        return as_fraction(c)

    has_integral = False


@dataclass(frozen=True)
class TrigRing:
    """Trigonometric polynomials on T^n with coefficients in Q(i)."""

    n: int
    kind = "trig"

    def __post_init__(self):
        if self.n < 1:
            raise RingError("dimension must be positive")

    def zero(self) -> "Trig":
        return Trig(self.n, {})

    def one(self) -> "Trig":
        return self.const(1)

    def const(self, c) -> "Trig":
        return Trig(self.n, {(0,) * self.n: GaussianRational.coerce(c)})

    def mode(self, k: Iterable[int], c=1) -> "Trig":
        return Trig(self.n, {tuple(k): GaussianRational.coerce(c)})

    def scalar(self, c) -> GaussianRational:
        return GaussianRational.coerce(c)

    has_integral = True


@lru_cache(maxsize=None)
def poly_ring(n: int) -> PolyRing:
    return PolyRing(n)


@lru_cache(maxsize=None)
def trig_ring(n: int) -> TrigRing:
    return TrigRing(n)


def make_ring(kind: str, n: int):
    if kind == "poly":
        return poly_ring(n)
    if kind == "trig":
        return trig_ring(n)
    raise RingError(f"unknown ring kind {kind!r}")


def _check_axis(j: int, n: int) -> None:
    if not (0 <= j < n):
        raise RingError(f"axis {j + 1} out of range 1..{n}")


# --------------------------------------------------------------------------
# elements

class _Sparse:
    """Shared sparse-map machinery for Poly and Trig."""

    __slots__ = ("n", "terms", "_hash")
    _zero_scalar = 0

    def __init__(self, n: int, terms: Mapping):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "terms", {k: v for k, v in terms.items() if v})
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    def _new(self, terms):
        return type(self)(self.n, terms)

    def _check(self, other):
        if type(other) is not type(self) or other.n != self.n:
            raise RingError(f"cannot combine {type(self).__name__}({self.n}) "
                            f"with {type(other).__name__}({getattr(other, 'n', '?')})")

    def _lift(self, other):
        if isinstance(other, _Sparse):
            self._check(other)
            return other
        return self.ring.const(other)

    def __add__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, self._zero_scalar) + v
        return self._new(out)

    __radd__ = __add__

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._lift(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out.get(k, self._zero_scalar) - v
        return self._new(out)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c):
        c = self.ring.scalar(c)
        if not c:
            return self.ring.zero()
        return self._new({k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, _Sparse):
            try:
                return self.scale(other)
            except (TypeError, RingError):
                return NotImplemented
        self._check(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        out: Dict = {}
        for ka, va in self.terms.items():
            for kb, vb in other.terms.items():
                k = tuple(a + b for a, b in zip(ka, kb))
                v = va * vb
                if k in out:
                    out[k] += v
                else:
                    out[k] = v
        return self._new(out)

    def __rmul__(self, other):
        return self.__mul__(other)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        out, base = self.ring.one(), self
        while e:
            if e & 1:
                out = out * base
            base = base * base
            e >>= 1
        return out

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, _Sparse):
            return type(other) is type(self) and self.n == other.n and self.terms == other.terms
        try:
            return self == self.ring.const(other)
        except (TypeError, RingError):
            return NotImplemented

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((type(self).__name__, self.n, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __repr__(self):
        return f"{type(self).__name__}({self.n}, {self})"

    def constant_term(self):
        return self.terms.get((0,) * self.n, self._zero_scalar)

    def sorted_items(self):
        """Terms ordered by (total degree, exponent) for stable printing."""
        return sorted(self.terms.items(), key=lambda kv: (sum(abs(e) for e in kv[0]), kv[0]))


class Poly(_Sparse):
    """Polynomial in ``n`` variables: ``terms`` maps exponent tuples to Fractions."""

    __slots__ = ()
    _zero_scalar = Fraction(0)

    def __init__(self, n: int, terms: Mapping[Exponent, Fraction]):
        super().__init__(n, terms)

    @property
    def ring(self) -> PolyRing:
        return poly_ring(self.n)

    def degree(self) -> int:
        """Maximal total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def derive(self, j: int) -> "Poly":
        _check_axis(j, self.n)
        out = {}
        for e, c in self.terms.items():
            if e[j]:
                ee = list(e)
                ee[j] -= 1
                out[tuple(ee)] = c * e[j]
        return Poly(self.n, out)

    def derive_multi(self, sigma: Exponent) -> "Poly":
        """Apply ``prod_j d_j^sigma_j``."""
        out = {}
        for e, c in self.terms.items():
            if all(a >= s for a, s in zip(e, sigma)):
                f = 1
                for a, s in zip(e, sigma):
                    for t in range(s):
                        f *= a - t
                out[tuple(a - s for a, s in zip(e, sigma))] = c * f
        return Poly(self.n, out)

    def primitive(self, j: int) -> "Poly":
        """Antiderivative in x_j with no x_j-free part added."""
        _check_axis(j, self.n)
        out = {}
        for e, c in self.terms.items():
            ee = list(e)
            ee[j] += 1
            out[tuple(ee)] = c / ee[j]
        return Poly(self.n, out)

    def homogeneous_part(self, deg: int) -> "Poly":
        return Poly(self.n, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def evaluate(self, point) -> Fraction:
        total = Fraction(0)
        for e, c in self.terms.items():
            t = c
            for x, a in zip(point, e):
                if a:
                    t *= Fraction(x) ** a
            total += t
        return total

    def __str__(self):
        from .textio import format_poly
        return format_poly(self)


class Trig(_Sparse):
    """Finite Fourier series: ``terms`` maps frequency vectors to GaussianRationals."""

    __slots__ = ()
    _zero_scalar = GaussianRational(0)

    def __init__(self, n: int, terms: Mapping[Exponent, GaussianRational]):
        super().__init__(n, {k: GaussianRational.coerce(v) for k, v in terms.items()})

    @property
    def ring(self) -> TrigRing:
        return trig_ring(self.n)

    def derive(self, j: int) -> "Trig":
        _check_axis(j, self.n)
        return Trig(self.n, {k: c * k[j] for k, c in self.terms.items() if k[j]})

    def derive_multi(self, sigma: Exponent) -> "Trig":
        out = {}
        for k, c in self.terms.items():
            f = 1
            for kj, s in zip(k, sigma):
                f *= kj ** s
            if f:
                out[k] = c * f
        return Trig(self.n, out)

    def integrate(self) -> GaussianRational:
        return self.terms.get((0,) * self.n, GaussianRational(0))

    def conjugate(self) -> "Trig":
        """Complex conjugate function: ``c e_k -> conj(c) e_{-k}``."""
        return Trig(self.n, {tuple(-a for a in k): c.conjugate() for k, c in self.terms.items()})

    def is_real(self) -> bool:
        return self == self.conjugate()

    def max_frequency(self) -> int:
        return max((max(abs(a) for a in k) for k in self.terms), default=0)

    def mode_part(self, k) -> "Trig":
        k = tuple(k)
        return Trig(self.n, {k: self.terms[k]} if k in self.terms else {})

    def split_by_mode(self) -> Dict[Exponent, GaussianRational]:
        return dict(self.terms)

    def __str__(self):
        from .textio import format_trig
        return format_trig(self)


Coefficient = Union[Poly, Trig]


def derive(f: Coefficient, j: int) -> Coefficient:
    """Partial derivative (polynomials) or scaled mode-wise derivative (trig).

    ``j`` is 0-based.
    """
    return f.derive(j)


def integrate_torus(f: Trig) -> GaussianRational:
    """Integral over the unit-volume torus: the coefficient of the zero mode."""
    if not isinstance(f, Trig):
        raise RingError("integration is only defined on the torus ring")
    return f.integrate()


def primitive_in_axis(f: Poly, j: int) -> Poly:
    """Return ``h`` with ``d_j h = f`` and no x_j-independent part."""
    if not isinstance(f, Poly):
        raise RingError("primitive_in_axis needs a polynomial")
    return f.primitive(j)
