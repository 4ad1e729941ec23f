"""The central extension of exact divergence-free fields on the torus T^n.

Fourier calculus with scaled derivations ``D_j e_k = k_j e_k`` and unit total
volume.  The mode-wise homotopy ``h(c e_k dx_I) = c e_k iota_{k} dx_I / |k|^2``
satisfies ``dh + hd = id`` on every non-constant mode.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

from .forms import (DegreeError, Form, MultiVec, d, divergence, evaluate_2form, flat,
                    hamiltonian_field, iota, leibniz_bracket, lie_bracket, volume_form, wedge)
from .scalars import GaussianRational, Trig, integrate_torus, trig_ring


class TorusError(ValueError):
    pass


def _require_trig(w):
    if w.ring.kind != "trig":
        raise TorusError("torus operations need trigonometric coefficients")


def constant_mode(w: Form) -> Form:
    _require_trig(w)
    zero = (0,) * w.n
    out = {}
    for I, c in w.terms.items():
        v = c.terms.get(zero)
        if v:
            out[I] = Trig(w.n, {zero: v})
    return Form(w.ring, w.degree, out)


def homotopy(w: Form) -> Form:
    """Mode-wise homotopy lowering the degree by one; kills constant modes."""
    _require_trig(w)
    if w.degree == 0:
        return Form(w.ring, -1, {})
    out: dict = {}
    for I, c in w.terms.items():
        for k, v in c.terms.items():
            norm = sum(x * x for x in k)
            if not norm:
                continue
            for p, j in enumerate(I):
                if not k[j]:
                    continue
                J = I[:p] + I[p + 1:]
                coef = v * Fraction((-1) ** p * k[j], norm)
                modes = out.setdefault(J, {})
                modes[k] = modes.get(k, GaussianRational(0)) + coef
    return Form(w.ring, w.degree - 1, {J: Trig(w.n, m) for J, m in out.items()})


def check_divfree(X: MultiVec) -> None:
    if divergence(X):
        raise TorusError("vector field is not divergence-free")


def is_exact_divfree(X: MultiVec) -> bool:
    """``iota_X mu`` is exact iff X has no constant mode."""
    _require_trig(X)
    check_divfree(X)
    return not constant_mode(flat(X))


def potential(X: MultiVec) -> Form:
    """``alpha = h(iota_X mu)`` with ``d alpha = iota_X mu``."""
    if not is_exact_divfree(X):
        raise TorusError("field is not exact divergence-free")
    return homotopy(flat(X))


@dataclass(frozen=True)
class QuotientClass:
    """Element of ``Omega^{n-2} / d Omega^{n-3}`` in normal form."""

    rep: Form
    original: Form

    def __eq__(self, other):
        return isinstance(other, QuotientClass) and self.rep == other.rep

    def __hash__(self):
        return hash(self.rep)

    def field(self) -> MultiVec:
        return hamiltonian_field(self.rep)

    def is_central(self) -> bool:
        return not self.field()

    def is_constant(self) -> bool:
        return constant_mode(self.rep) == self.rep


def normal_form(a: Form) -> QuotientClass:
    """``rep = const(a) + h(d a)``; unchanged under ``a -> a + d b``."""
    _require_trig(a)
    if a.degree != a.n - 2:
        raise DegreeError("classes live in degree n-2")
    return QuotientClass(constant_mode(a) + homotopy(d(a)), a)


def central_bracket(A: QuotientClass, B: QuotientClass) -> QuotientClass:
    """Class of ``iota_{X_A} iota_{X_B} mu``."""
    mu = volume_form(A.rep.ring)
    return normal_form(iota(A.field(), iota(B.field(), mu)))


def _check_sigma(sigma: Form):
    _require_trig(sigma)
    if sigma.degree != 2:
        raise DegreeError("sigma must be a 2-form")
    if d(sigma):
        raise TorusError("sigma is not closed")


def _scalar(v) -> GaussianRational:
    return GaussianRational.coerce(v)


def lichnerowicz(sigma: Form, X: MultiVec, Y: MultiVec) -> GaussianRational:
    """``int sigma(X, Y) mu`` with ``sigma(X, Y) = iota_Y iota_X sigma``."""
    _check_sigma(sigma)
    check_divfree(X)
    check_divfree(Y)
    return integrate_torus(evaluate_2form(sigma, X, Y))


def sigma_functional(sigma: Form, gamma: Form) -> GaussianRational:
    """``lambda_sigma(gamma) = -int gamma ^ sigma``.

    The sign makes ``lambda_sigma([a, b]) = int sigma(X_a, X_b) mu``, since
    ``iota_X iota_Y mu ^ sigma = -sigma(X, Y) mu`` for every 2-form sigma.
    """
    _check_sigma(sigma)
    top = wedge(gamma, sigma)
    if top.degree != top.n:
        raise DegreeError("gamma must have degree n-2")
    return -integrate_torus(top[tuple(range(top.n))]) if top else GaussianRational(0)


def cocycle_vs_bracket(sigma: Form, a: Form, b: Form) -> Tuple[GaussianRational, GaussianRational]:
    left = lichnerowicz(sigma, hamiltonian_field(a), hamiltonian_field(b))
    right = sigma_functional(sigma, leibniz_bracket(a, b))
    return left, right


def _free_axes(n: int, fixed: Sequence[int]) -> Tuple[int, ...]:
    fixed = tuple(fixed)
    if len(fixed) != 2 or len(set(fixed)) != 2 or any(not 0 <= j < n for j in fixed):
        raise TorusError(f"a cycle fixes two distinct axes in range, got {fixed}")
    return tuple(j for j in range(n) if j not in fixed)


def integrate_cycle(fixed: Sequence[int], w: Form) -> GaussianRational:
    """Integral of an (n-2)-form over the subtorus where the ``fixed`` axes are 0."""
    _require_trig(w)
    free = _free_axes(w.n, fixed)
    if w.degree != len(free):
        raise DegreeError("only (n-2)-forms integrate over a cycle")
    c = w[free]
    total = GaussianRational(0)
    if not c:
        return total
    for k, v in c.terms.items():
        if all(k[j] == 0 for j in free):
            total = total + v
    return total


def cycle_cocycle(fixed: Sequence[int], X: MultiVec, Y: MultiVec) -> GaussianRational:
    """``int_C iota_X iota_Y mu``."""
    _require_trig(X)
    check_divfree(X)
    check_divfree(Y)
    mu = volume_form(X.ring)
    return integrate_cycle(fixed, iota(X, iota(Y, mu)))


def cocycle_defect(omega, X: MultiVec, Y: MultiVec, Z: MultiVec) -> GaussianRational:
    """``omega([X,Y],Z) + omega([Y,Z],X) + omega([Z,X],Y)``."""
    return (_scalar(omega(lie_bracket(X, Y), Z)) + _scalar(omega(lie_bracket(Y, Z), X))
            + _scalar(omega(lie_bracket(Z, X), Y)))


def cycles(n: int) -> List[Tuple[int, int]]:
    """Fixed-axis pairs, ordered so that cycle i has the free axes of ``center_basis(n)[i]``."""
    return [tuple(j for j in range(n) if j not in I)
            for I in itertools.combinations(range(n), n - 2)]


def center_basis(n: int) -> List[Form]:
    R = trig_ring(n)
    return [Form(R, n - 2, {I: R.one()}) for I in itertools.combinations(range(n), n - 2)]


def pairing_matrix(n: int) -> List[List[GaussianRational]]:
    """Rows: center basis ``[dx_I]``; columns: coordinate cycles (fixed axis pairs)."""
    return [[integrate_cycle(C, b) for C in cycles(n)] for b in center_basis(n)]


def pairing_rank(n: int) -> int:
    from .linalg import dense_rank
    M = pairing_matrix(n)
    if any(v.im for row in M for v in row):
        raise TorusError("pairing matrix is not rational")
    return dense_rank([[v.re for v in row] for row in M])
