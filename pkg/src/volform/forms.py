"""Cartan calculus for forms and multivector fields with the standard volume form.

Indices are 0-based internally (``dx[0]`` is dx_1).  The volume form
``mu = dx_1 ^ ... ^ dx_n`` is implicit.  Contraction of a multivector follows

    iota_{A ^ B} w = iota_B iota_A w,

so ``flat(X1 ^ X2) = iota_{X2} iota_{X1} mu``.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from typing import Dict, Iterable, List, Sequence, Tuple

from .scalars import Coefficient, RingError

Index = Tuple[int, ...]


class DegreeError(ValueError):
    """Degree or kind mismatch between operands."""


class NotDecomposableError(ValueError):
    """An operation defined only on decomposable multivectors got a general one."""


class _Alternating:
    """Sparse alternating tensor with coefficients in a differential algebra."""

    kind = "?"
    __slots__ = ("ring", "degree", "terms", "_hash")

    def __init__(self, ring, degree: int, terms: Dict[Index, Coefficient] = None):
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "degree", degree)
        clean = {}
        if terms and 0 <= degree <= ring.n:
            for idx, c in terms.items():
                idx = tuple(idx)
                if len(idx) != degree:
                    raise DegreeError(f"index {idx} does not have length {degree}")
                if any(a >= b for a, b in zip(idx, idx[1:])):
                    raise DegreeError(f"index tuple {idx} is not strictly increasing")
                if idx and not (0 <= idx[0] and idx[-1] < ring.n):
                    raise DegreeError(f"index {idx} out of range for n={ring.n}")
                if c.n != ring.n or c.ring != ring:
                    raise RingError("coefficient ring does not match")
                if c:
                    clean[idx] = c
        object.__setattr__(self, "terms", clean)
        object.__setattr__(self, "_hash", None)

    def __setattr__(self, name, value):
        raise AttributeError(f"{type(self).__name__} is immutable")

    @property
    def n(self) -> int:
        return self.ring.n

    def _same(self, other):
        if type(other) is not type(self):
            raise DegreeError(f"cannot combine {self.kind} with {getattr(other, 'kind', type(other).__name__)}")
        if other.ring != self.ring:
            raise RingError(f"ring mismatch: {self.ring} vs {other.ring}")
        if other.degree != self.degree:
            raise DegreeError(f"degree mismatch: {self.degree} vs {other.degree}")

    def _new(self, terms, degree=None):
        return type(self)(self.ring, self.degree if degree is None else degree, terms)

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] + v if k in out else v
        return self._new(out)

    __radd__ = __add__

    def __sub__(self, other):
        self._same(other)
        out = dict(self.terms)
        for k, v in other.terms.items():
            out[k] = out[k] - v if k in out else -v
        return self._new(out)

    def __neg__(self):
        return self._new({k: -v for k, v in self.terms.items()})

    def scale(self, f) -> "_Alternating":
        """Multiply every coefficient by a scalar or a ring element."""
        if not hasattr(f, "terms"):
            f = self.ring.const(f)
        if not f:
            return self._new({})
        return self._new({k: f * v for k, v in self.terms.items()})

    def __mul__(self, f):
        return self.scale(f)

    __rmul__ = __mul__

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, int) and other == 0:
            return not self.terms
        if type(other) is not type(self):
            return NotImplemented
        return (self.ring == other.ring and self.degree == other.degree
                and self.terms == other.terms)

    def __hash__(self):
        h = self._hash
        if h is None:
            h = hash((self.kind, self.ring, self.degree, frozenset(self.terms.items())))
            object.__setattr__(self, "_hash", h)
        return h

    def __getitem__(self, idx) -> Coefficient:
        return self.terms.get(tuple(idx), self.ring.zero())

    def map_coefficients(self, fn) -> "_Alternating":
        return self._new({k: fn(v) for k, v in self.terms.items()})

    def __str__(self):
        from .textio import format_alternating
        return format_alternating(self)

    def __repr__(self):
        return f"{type(self).__name__}<{self.ring.kind} n={self.n}>({self})"


class Form(_Alternating):
    """A differential k-form ``sum_I f_I dx_I``."""

    kind = "form"
    __slots__ = ()


class MultiVec(_Alternating):
    """A k-vector field ``sum_I f_I d_I`` (d_I = d_{i1} ^ ... ^ d_{ik})."""

    kind = "vec"
    __slots__ = ()

    def components(self) -> List[Coefficient]:
        """Coefficient list of a vector field (degree 1)."""
        if self.degree != 1:
            raise DegreeError("components() needs a vector field")
        return [self.terms.get((j,), self.ring.zero()) for j in range(self.n)]

    def __call__(self, f: Coefficient) -> Coefficient:
        """Directional derivative ``X(f)`` of a function along a vector field."""
        if self.degree != 1:
            raise DegreeError("only vector fields act on functions")
        out = self.ring.zero()
        for (j,), c in self.terms.items():
            df = f.derive(j)
            if df:
                out = out + c * df
        return out


VectorField = MultiVec


# --------------------------------------------------------------------------
# constructors

def zero_form(ring, degree: int) -> Form:
    return Form(ring, degree, {})


def zero_vec(ring, degree: int) -> MultiVec:
    return MultiVec(ring, degree, {})


def function_form(f: Coefficient) -> Form:
    return Form(f.ring, 0, {(): f})


def volume_form(ring) -> Form:
    return Form(ring, ring.n, {tuple(range(ring.n)): ring.one()})


def vector_field(ring, components: Sequence) -> MultiVec:
    """Build ``sum_j components[j] d_j``; entries may be scalars or ring elements."""
    terms = {}
    for j, c in enumerate(components):
        if not hasattr(c, "terms"):
            c = ring.const(c)
        terms[(j,)] = c
    return MultiVec(ring, 1, terms)


def coordinate_field(ring, j: int, coeff=None) -> MultiVec:
    c = ring.one() if coeff is None else coeff
    return MultiVec(ring, 1, {(j,): c})


def basis_form(ring, idx: Iterable[int], coeff=None) -> Form:
    """``coeff * dx_{idx}`` with an arbitrary (not necessarily sorted) index list."""
    idx = tuple(idx)
    c = ring.one() if coeff is None else coeff
    sign, srt = sort_sign(idx)
    if sign == 0:
        return zero_form(ring, len(idx))
    return Form(ring, len(idx), {srt: c if sign > 0 else -c})


def basis_vec(ring, idx: Iterable[int], coeff=None) -> MultiVec:
    idx = tuple(idx)
    c = ring.one() if coeff is None else coeff
    sign, srt = sort_sign(idx)
    if sign == 0:
        return zero_vec(ring, len(idx))
    return MultiVec(ring, len(idx), {srt: c if sign > 0 else -c})


# --------------------------------------------------------------------------
# index combinatorics

def sort_sign(idx: Sequence[int]) -> Tuple[int, Index]:
    """Sign of the permutation sorting ``idx`` (0 if an index repeats)."""
    if len(set(idx)) != len(idx):
        return 0, ()
    inv = sum(1 for a, b in combinations(idx, 2) if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(idx))


@lru_cache(maxsize=None)
def _merge(I: Index, J: Index) -> Tuple[int, Index]:
    if set(I) & set(J):
        return 0, ()
    inv = sum(1 for a in I for b in J if a > b)
    return (-1 if inv % 2 else 1), tuple(sorted(I + J))


@lru_cache(maxsize=None)
def _remove(j: int, I: Index) -> Tuple[int, Index]:
    """iota_{d_j} dx_I = sign * dx_{I without j}."""
    if j not in I:
        return 0, ()
    p = I.index(j)
    return (-1 if p % 2 else 1), I[:p] + I[p + 1:]


@lru_cache(maxsize=None)
def _contract_basis(J: Index, I: Index) -> Tuple[int, Index]:
    """iota_{d_J} dx_I with iota_{d_j1 ^ ... ^ d_jp} = iota_{d_jp} ... iota_{d_j1}."""
    sign = 1
    cur = I
    for j in J:
        s, cur = _remove(j, cur)
        if s == 0:
            return 0, ()
        sign *= s
    return sign, cur


@lru_cache(maxsize=None)
def _flat_table(n: int, k: int) -> Dict[Index, Tuple[int, Index]]:
    """For each k-index J: iota_{d_J} mu = sign * dx_{complement}."""
    full = tuple(range(n))
    return {J: _contract_basis(J, full) for J in combinations(range(n), k)}


@lru_cache(maxsize=None)
def _sharp_table(n: int, m: int) -> Dict[Index, Tuple[int, Index]]:
    """For each m-form index I: the (sign, J) with iota_{d_J} mu = sign * dx_I."""
    out = {}
    for J, (s, I) in _flat_table(n, n - m).items():
        out[I] = (s, J)
    return out


# --------------------------------------------------------------------------
# exterior algebra

def wedge(a: _Alternating, b: _Alternating) -> _Alternating:
    """Exterior product of two forms (or two multivectors)."""
    if type(a) is not type(b):
        raise DegreeError(f"cannot wedge {a.kind} with {b.kind}")
    if a.ring != b.ring:
        raise RingError(f"ring mismatch: {a.ring} vs {b.ring}")
    deg = a.degree + b.degree
    cls = type(a)
    if deg > a.n:
        return cls(a.ring, deg, {})
    out: Dict[Index, Coefficient] = {}
    for I, f in a.terms.items():
        for J, g in b.terms.items():
            s, K = _merge(I, J)
            if s == 0:
                continue
            v = f * g if s > 0 else -(f * g)
            out[K] = out[K] + v if K in out else v
    return cls(a.ring, deg, out)


def wedge_all(items: Sequence[_Alternating]) -> _Alternating:
    out = items[0]
    for x in items[1:]:
        out = wedge(out, x)
    return out


def d(a: Form) -> Form:
    """Exterior derivative.  The image of a top-degree form is the zero (n+1)-form."""
    if not isinstance(a, Form):
        raise DegreeError("d acts on forms")
    out: Dict[Index, Coefficient] = {}
    if a.degree >= a.n:
        return Form(a.ring, a.degree + 1, {})
    for I, f in a.terms.items():
        for j in range(a.n):
            if j in I:
                continue
            df = f.derive(j)
            if not df:
                continue
            s, K = _merge((j,), I)
            v = df if s > 0 else -df
            out[K] = out[K] + v if K in out else v
    return Form(a.ring, a.degree + 1, out)


def contract(A: MultiVec, w: Form) -> Form:
    """Insert a multivector into a form: ``iota_{X1^..^Xk} w = iota_Xk .. iota_X1 w``."""
    if not isinstance(A, MultiVec) or not isinstance(w, Form):
        raise DegreeError("contract(multivector, form) expected")
    if A.ring != w.ring:
        raise RingError("ring mismatch in contraction")
    if A.degree > w.degree:
        raise DegreeError(f"cannot contract a {A.degree}-vector into a {w.degree}-form")
    out: Dict[Index, Coefficient] = {}
    for J, a in A.terms.items():
        for I, f in w.terms.items():
            s, K = _contract_basis(J, I)
            if s == 0:
                continue
            v = a * f if s > 0 else -(a * f)
            out[K] = out[K] + v if K in out else v
    return Form(w.ring, w.degree - A.degree, out)


def iota(X: MultiVec, w: Form) -> Form:
    """Contraction that tolerates degree underflow (returns the zero form)."""
    if w.degree < X.degree or w.degree > w.n:
        return Form(w.ring, w.degree - X.degree, {})
    return contract(X, w)


def flat(A: MultiVec) -> Form:
    """``A -> iota_A mu``."""
    if not isinstance(A, MultiVec):
        raise DegreeError("flat needs a multivector")
    n = A.n
    table = _flat_table(n, A.degree)
    out = {}
    for J, a in A.terms.items():
        s, I = table[J]
        out[I] = a if s > 0 else -a
    return Form(A.ring, n - A.degree, out)


def sharp(w: Form) -> MultiVec:
    """Inverse of :func:`flat`."""
    if not isinstance(w, Form):
        raise DegreeError("sharp needs a form")
    n = w.n
    if not 0 <= w.degree <= n:
        return MultiVec(w.ring, n - w.degree, {})
    table = _sharp_table(n, w.degree)
    out = {}
    for I, f in w.terms.items():
        s, J = table[I]
        out[J] = f if s > 0 else -f
    return MultiVec(w.ring, n - w.degree, out)


# --------------------------------------------------------------------------
# vector fields

def _check_vf(X):
    if not isinstance(X, MultiVec) or X.degree != 1:
        raise DegreeError("a vector field (1-vector) is required")


def lie_bracket(X: MultiVec, Y: MultiVec) -> MultiVec:
    """``[X, Y]^i = X(Y^i) - Y(X^i)``."""
    _check_vf(X)
    _check_vf(Y)
    if X.ring != Y.ring:
        raise RingError("ring mismatch")
    out = {}
    for i in range(X.n):
        c = X(Y[(i,)]) - Y(X[(i,)])
        if c:
            out[(i,)] = c
    return MultiVec(X.ring, 1, out)


def divergence(X: MultiVec) -> Coefficient:
    """``div X`` defined by ``L_X mu = div(X) mu``."""
    _check_vf(X)
    out = X.ring.zero()
    for (j,), c in X.terms.items():
        out = out + c.derive(j)
    return out


def lie_derivative(X: MultiVec, w: Form) -> Form:
    """Cartan formula ``L_X = d iota_X + iota_X d``."""
    _check_vf(X)
    if w.degree == 0:
        return Form(w.ring, 0, {(): X(w[()])}) if w else w
    return d(contract(X, w)) + iota(X, d(w))


def lie_derivative_vec(X: MultiVec, A: MultiVec) -> MultiVec:
    """``L_X A`` for a multivector field A (Schouten bracket with a vector field)."""
    _check_vf(X)
    out = MultiVec(A.ring, A.degree, {})
    comps = X.components()
    for J, a in A.terms.items():
        out = out + MultiVec(A.ring, A.degree, {J: X(a)})
        for p, j in enumerate(J):
            # [X, d_j] = -sum_i (d_j X^i) d_i
            for i in range(A.n):
                c = comps[i].derive(j)
                if not c:
                    continue
                idx = J[:p] + (i,) + J[p + 1:]
                out = out - basis_vec(A.ring, idx, a * c)
    return out


def evaluate_2form(sigma: Form, X: MultiVec, Y: MultiVec) -> Coefficient:
    """``sigma(X, Y) = iota_Y iota_X sigma``."""
    if sigma.degree != 2:
        raise DegreeError("evaluate_2form needs a 2-form")
    return contract(Y, contract(X, sigma))[()]


# --------------------------------------------------------------------------
# delta, X_alpha and the Leibniz bracket

def delta(A: MultiVec) -> MultiVec:
    """``delta(A) = sharp(d(flat(A)))``, lowering the degree by one."""
    if A.degree < 1:
        raise DegreeError("delta needs degree >= 1")
    return sharp(d(flat(A)))


class Decomposable:
    """A wedge product of vector fields kept in factored form."""

    __slots__ = ("factors",)

    def __init__(self, factors: Sequence[MultiVec]):
        factors = tuple(factors)
        if not factors:
            raise NotDecomposableError("empty factor list")
        for X in factors:
            _check_vf(X)
        if len({X.ring for X in factors}) != 1:
            raise RingError("factors live in different rings")
        self.factors = factors

    @property
    def ring(self):
        return self.factors[0].ring

    @property
    def degree(self) -> int:
        return len(self.factors)

    def multivec(self) -> MultiVec:
        return wedge_all(list(self.factors))

    @classmethod
    def from_multivec(cls, A: MultiVec) -> "Decomposable":
        """Factor a single-term multivector ``f d_I``; anything else is rejected."""
        if isinstance(A, Decomposable):
            return A
        if not isinstance(A, MultiVec) or A.degree < 1:
            raise NotDecomposableError("a multivector of degree >= 1 is required")
        if A.degree == 1:
            return cls([A])
        if len(A.terms) != 1:
            raise NotDecomposableError(
                "multivector with several basis terms: pass explicit factors instead")
        (I, f), = A.terms.items()
        fs = [coordinate_field(A.ring, I[0], f)]
        fs += [coordinate_field(A.ring, i) for i in I[1:]]
        return cls(fs)


def delta_explicit(A) -> MultiVec:
    """The double-sum expression for delta on a decomposable ``X1 ^ ... ^ Xk``.

    delta(X1^..^Xk) = sum_{i<j} (-1)^{k+i+j} [Xi,Xj] ^ X1^..^Xk (Xi, Xj omitted)
                    + sum_i (-1)^{k+i} div(Xi) X1^..^Xk (Xi omitted)
    with 1-based i, j.
    """
    dec = Decomposable.from_multivec(A)
    X = dec.factors
    k = len(X)
    ring = dec.ring
    out = MultiVec(ring, k - 1, {})
    for i in range(k):
        for j in range(i + 1, k):
            rest = [X[t] for t in range(k) if t not in (i, j)]
            term = wedge_all([lie_bracket(X[i], X[j])] + rest)
            sgn = (-1) ** (k + (i + 1) + (j + 1))
            out = out + (term if sgn > 0 else -term)
    for i in range(k):
        rest = [X[t] for t in range(k) if t != i]
        dv = divergence(X[i])
        if not dv:
            continue
        term = wedge_all(rest).scale(dv) if rest else MultiVec(ring, 0, {(): dv})
        sgn = (-1) ** (k + i + 1)
        out = out + (term if sgn > 0 else -term)
    return out


def hamiltonian_field(a: Form) -> MultiVec:
    """The field ``X_a`` with ``iota_{X_a} mu = d a`` (a is an (n-2)-form)."""
    if not isinstance(a, Form) or a.degree != a.n - 2:
        raise DegreeError(f"hamiltonian_field needs an (n-2)-form, got degree {a.degree}")
    return sharp(d(a))


def hamiltonian_field_bivector(X1: MultiVec, X2: MultiVec) -> MultiVec:
    """``X_alpha`` for ``alpha = flat(X1 ^ X2)``: div(X2) X1 - div(X1) X2 - [X1, X2]."""
    return X1.scale(divergence(X2)) - X2.scale(divergence(X1)) - lie_bracket(X1, X2)


def leibniz_bracket(a: Form, b: Form) -> Form:
    """``[a, b] = L_{X_a} b`` on (n-2)-forms."""
    if b.degree != b.n - 2:
        raise DegreeError("leibniz_bracket needs (n-2)-forms")
    return lie_derivative(hamiltonian_field(a), b)


def leibniz_bracket_bivector(X1, X2, Y1, Y2, expanded: bool = False) -> MultiVec:
    """Bracket of decomposable bivectors ``[X1^X2, Y1^Y2]`` as a bivector.

    The compact form is ``[dA, Y1]^Y2 + Y1^[dA, Y2]`` with ``dA = delta(X1^X2)``;
    ``expanded=True`` evaluates the ten-term expansion instead.
    """
    for V in (X1, X2, Y1, Y2):
        _check_vf(V)
    if not expanded:
        dA = hamiltonian_field_bivector(X1, X2)
        return wedge(lie_bracket(dA, Y1), Y2) + wedge(Y1, lie_bracket(dA, Y2))
    br = lie_bracket
    d1, d2 = divergence(X1), divergence(X2)
    X12 = br(X1, X2)
    terms = [
        -wedge(br(X12, Y1), Y2),
        -wedge(Y1, br(X12, Y2)),
        -wedge(br(X2, Y1), Y2).scale(d1),
        -wedge(Y1, br(X2, Y2)).scale(d1),
        wedge(X2, Y2).scale(Y1(d1)),
        wedge(Y1, X2).scale(Y2(d1)),
        wedge(br(X1, Y1), Y2).scale(d2),
        wedge(Y1, br(X1, Y2)).scale(d2),
        -wedge(X1, Y2).scale(Y1(d2)),
        -wedge(Y1, X1).scale(Y2(d2)),
    ]
    out = terms[0]
    for t in terms[1:]:
        out = out + t
    return out


def squares_identity_rhs(X: MultiVec, Y: MultiVec) -> Form:
    """``-iota_{[X,Y]^X^Y} mu``, which equals ``iota_{X_a} a`` for ``a = flat(X^Y)``."""
    return -flat(wedge_all([lie_bracket(X, Y), X, Y]))
