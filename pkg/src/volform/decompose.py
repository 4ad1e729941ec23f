"""Constructive perfectness and ideal-of-squares witnesses on polynomial forms.

Compactly supported cut-offs are replaced by their polynomial cores: the
function that equals ``y`` near the support becomes the coordinate ``y``
itself, and every polynomial is a single axis derivative, so no mass-matching
step is needed.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import List, Tuple

from .forms import (Form, MultiVec, coordinate_field, d, flat, hamiltonian_field, iota,
                    leibniz_bracket, sharp, squares_identity_rhs, wedge)
from .scalars import Poly, primitive_in_axis


class DecompositionError(ValueError):
    pass


def bracket_bound(n: int) -> int:
    return comb(n, 2) * (n + 1)


def square_bound(n: int) -> int:
    return 4 * comb(n, 3)


@dataclass(frozen=True)
class BracketWitness:
    pairs: Tuple[Tuple[Form, Form], ...]
    target: Form

    @property
    def count(self) -> int:
        return len(self.pairs)

    @property
    def bound(self) -> int:
        return bracket_bound(self.target.n)

    def evaluate(self) -> Form:
        out = Form(self.target.ring, self.target.degree, {})
        for a, b in self.pairs:
            out = out + leibniz_bracket(a, b)
        return out

    def verify(self) -> bool:
        return self.evaluate() == self.target and self.count <= self.bound


@dataclass(frozen=True)
class SquarePotential:
    """``alpha = flat(X ^ Y)`` together with its two factor fields."""

    alpha: Form
    X: MultiVec
    Y: MultiVec

    def contraction(self) -> Form:
        return iota(hamiltonian_field(self.alpha), self.alpha)

    def check_factorisation(self) -> bool:
        """``iota_{X_a} a == -iota_{[X,Y]^X^Y} mu`` and ``a == flat(X^Y)``."""
        return (flat(wedge(self.X, self.Y)) == self.alpha
                and self.contraction() == squares_identity_rhs(self.X, self.Y))


@dataclass(frozen=True)
class SquareWitness:
    potentials: Tuple[SquarePotential, ...]
    target: Form

    @property
    def count(self) -> int:
        return len(self.potentials)

    @property
    def bound(self) -> int:
        return square_bound(self.target.n)

    def evaluate(self) -> Form:
        out = Form(self.target.ring, self.target.degree, {})
        for p in self.potentials:
            out = out + p.contraction()
        return out

    def verify(self) -> bool:
        return self.evaluate() == self.target and self.count <= self.bound


def _require_poly(ring, n_min=3):
    if ring.kind != "poly":
        raise DecompositionError("decompositions need polynomial coefficients")
    if ring.n < n_min:
        raise DecompositionError(f"dimension {ring.n} < {n_min}: no decomposition (n = 2 fails)")


def commutator_decompose(B) -> BracketWitness:
    """Write an (n-2)-form (given as a bivector or as the form) as a sum of brackets.

    For each component ``g d_y ^ d_z`` (y < z) take the first axis x outside
    {y, z} and ``h`` with ``d_x h = g``; then
    ``[flat(x_y d_x ^ d_y), flat(h d_y ^ d_z)] = flat(g d_y ^ d_z)``.
    """
    if isinstance(B, Form):
        if B.degree != B.n - 2:
            raise DecompositionError("expected an (n-2)-form")
        B = sharp(B)
    if not isinstance(B, MultiVec) or B.degree != 2:
        raise DecompositionError("expected a bivector field")
    ring = B.ring
    _require_poly(ring)
    pairs = []
    for (y, z), g in sorted(B.terms.items()):
        x = min(i for i in range(ring.n) if i not in (y, z))
        h = primitive_in_axis(g, x)
        left = flat(wedge(coordinate_field(ring, x, ring.var(y)), coordinate_field(ring, y)))
        right = flat(wedge(coordinate_field(ring, y, h), coordinate_field(ring, z)))
        pairs.append((left, right))
    return BracketWitness(tuple(pairs), flat(B))


def square_decompose(b: Form) -> SquareWitness:
    """Write an (n-3)-form as ``sum_i iota_{X_{a_i}} a_i``.

    Each component ``g iota_{d_x^d_y^d_z} mu`` (x < y < z) uses
    ``f = primitive(g, x)``, ``X = d_x`` and ``Y = d_y - f d_z``.
    """
    if not isinstance(b, Form):
        raise DecompositionError("expected a form")
    ring = b.ring
    _require_poly(ring)
    if b.degree != ring.n - 3:
        raise DecompositionError(f"expected an (n-3)-form, got degree {b.degree}")
    C = sharp(b)
    pots = []
    for (x, y, z), g in sorted(C.terms.items()):
        f = primitive_in_axis(g, x)
        X = coordinate_field(ring, x)
        Y = coordinate_field(ring, y) - coordinate_field(ring, z, f)
        pots.append(SquarePotential(flat(wedge(X, Y)), X, Y))
    return SquareWitness(tuple(pots), b)


def squares_of_exact(c: Form, b: Form) -> List[Form]:
    """Potentials ``a_i`` with ``sum_i [a_i, a_i] = c`` for ``c = d b``."""
    if d(b) != c:
        raise DecompositionError("c is not d(b)")
    w = square_decompose(b)
    alphas = [p.alpha for p in w.potentials]
    total = Form(c.ring, c.degree, {})
    for a in alphas:
        total = total + leibniz_bracket(a, a)
    if total != c:  # pragma: no cover - would contradict d iota_{X_a} a = [a, a]
        raise DecompositionError("sum of squares does not reproduce the target")
    return alphas


def witness_json(w) -> dict:
    from .textio import format_alternating
    if isinstance(w, BracketWitness):
        return {
            "pairs": [[format_alternating(a), format_alternating(b)] for a, b in w.pairs],
            "verified": w.verify(),
            "count": w.count,
            "bound": w.bound,
        }
    return {
        "potentials": [format_alternating(p.alpha) for p in w.potentials],
        "factors": [[format_alternating(p.X), format_alternating(p.Y)] for p in w.potentials],
        "verified": w.verify() and all(p.check_factorisation() for p in w.potentials),
        "count": w.count,
        "bound": w.bound,
    }
