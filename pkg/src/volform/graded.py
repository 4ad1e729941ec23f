"""Graded divergence-free polynomial vector fields and their sl(n) linear algebra.

``X_k`` is the space of divergence-free fields with homogeneous degree-k
coefficients; ``X_1`` is sl(n) via ``sum a_ij x_j d_i -> (a_ij)``.  Under that
map the vector-field bracket is the *negative* matrix commutator, and
``L_X`` on constant vectors is ``-a``; the resulting action on constant
multivectors is the natural action of ``-a``.
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .cohomology import FiniteAlgebra, Module, h_dim, trivial
from .forms import MultiVec, basis_vec, lie_bracket, lie_derivative_vec
from .scalars import Poly, poly_ring

Exponent = Tuple[int, ...]


@lru_cache(maxsize=None)
def monomials(n: int, k: int) -> Tuple[Exponent, ...]:
    """Degree-k exponents in graded-lexicographic order (x1^k first)."""
    if k < 0:
        return ()
    out = [e for e in itertools.product(range(k + 1), repeat=n) if sum(e) == k]
    return tuple(sorted(out, reverse=True))


def divfree_dim_formula(n: int, k: int) -> int:
    return n * comb(n + k - 1, n - 1) - (comb(n + k - 2, n - 1) if k >= 1 else 0)


class FieldSpace:
    """Coordinates on all degree-k fields: column ``m * n + i`` is ``x^{mono[m]} d_i``."""

    def __init__(self, n: int, k: int):
        self.n, self.k = n, k
        self.monos = monomials(n, k)
        self.index = {e: m for m, e in enumerate(self.monos)}
        self.dim = len(self.monos) * n
        self.ring = poly_ring(n)

    def column(self, e: Exponent, i: int) -> int:
        return self.index[e] * self.n + i

    def to_vector(self, X: MultiVec) -> Dict[int, Fraction]:
        out = {}
        for (i,), c in X.terms.items():
            for e, v in c.terms.items():
                if sum(e) != self.k:
                    raise ValueError(f"field is not homogeneous of degree {self.k}")
                out[self.column(e, i)] = v
        return out

    def to_field(self, v: Dict[int, Fraction]) -> MultiVec:
        comps: Dict[int, Dict[Exponent, Fraction]] = {}
        for col, c in v.items():
            m, i = divmod(col, self.n)
            comps.setdefault(i, {})[self.monos[m]] = c
        return MultiVec(self.ring, 1, {(i,): Poly(self.n, t) for i, t in comps.items()})

    def weight(self, col: int) -> Tuple[int, ...]:
        m, i = divmod(col, self.n)
        w = list(self.monos[m])
        w[i] -= 1
        return tuple(w)


@dataclass
class GradedBasis:
    n: int
    k: int
    vectors: List[MultiVec]
    space: FieldSpace
    free: List[int]
    weights: List[Tuple[int, ...]]
    raw: List[Dict[int, Fraction]]

    def __len__(self):
        return len(self.vectors)

    def coords(self, X: MultiVec) -> List[Fraction]:
        """Coordinates of a member of the span (read off at the free columns)."""
        v = self.space.to_vector(X)
        c = [v.get(f, Fraction(0)) for f in self.free]
        recon: Dict[int, Fraction] = {}
        for a, vec in zip(c, self.raw):
            if a:
                for col, x in vec.items():
                    recon[col] = recon.get(col, 0) + a * x
        if {k: x for k, x in recon.items() if x} != v:
            raise ValueError("field is not in the span of the basis")
        return c

    def contains(self, X: MultiVec) -> bool:
        try:
            self.coords(X)
            return True
        except ValueError:
            return False


@lru_cache(maxsize=None)
def basis_divfree(n: int, k: int) -> GradedBasis:
    """Kernel of the divergence on degree-k fields, by exact row reduction."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2 and k >= 0")
    space = FieldSpace(n, k)
    rows: Dict[Exponent, Dict[int, Fraction]] = {}
    for e in space.monos:
        for i in range(n):
            if e[i]:
                t = list(e)
                t[i] -= 1
                rows.setdefault(tuple(t), {})[space.column(e, i)] = Fraction(e[i])
    # one kernel vector per free column, in column order
    kernel = linalg.nullspace(rows.values(), space.dim)
    free = linalg.free_columns(rows.values(), space.dim)
    vectors = [space.to_field(v) for v in kernel]
    weights = [space.weight(free_col) for free_col in free]
    return GradedBasis(n, k, vectors, space, free, weights, kernel)


def _weight_key(w: Sequence[int]) -> Tuple[int, ...]:
    """Weights of the diagonal of sl(n) are only defined modulo (1, ..., 1)."""
    return tuple(Fraction(a) - Fraction(sum(w), len(w)) for a in w)


@dataclass
class RepMatrix:
    """Action of the ``X_1`` basis on a finite-dimensional space."""

    gens: List[MultiVec]
    matrices: List[np.ndarray]
    weights: List[Tuple[int, ...]]

    @property
    def dim(self) -> int:
        return len(self.weights)

    def check(self, algebra_basis: GradedBasis) -> bool:
        """``rho([X, Y]) = [rho X, rho Y]`` on all generator pairs (both sides are antisymmetric)."""
        mats = self.matrices
        for a, X in enumerate(self.gens):
            for b, Y in enumerate(self.gens[a + 1:], start=a + 1):
                c = algebra_basis.coords(lie_bracket(X, Y))
                lhs = sum((ci * mats[i] for i, ci in enumerate(c) if ci), _zeros(self.dim))
                if (lhs != mats[a].dot(mats[b]) - mats[b].dot(mats[a])).any():
                    return False
        return True


def _zeros(m: int) -> np.ndarray:
    z = np.empty((m, m), dtype=object)
    z.fill(0)
    return z


def sl_generators(n: int) -> GradedBasis:
    return basis_divfree(n, 1)


def rep_on_divfree(n: int, k: int) -> RepMatrix:
    """``ad`` of ``X_1`` on ``X_k`` in the basis of :func:`basis_divfree`."""
    g = sl_generators(n)
    B = basis_divfree(n, k)
    mats = []
    for X in g.vectors:
        M = _zeros(len(B))
        for col, Y in enumerate(B.vectors):
            for row, c in enumerate(B.coords(lie_bracket(X, Y))):
                if c:
                    M[row, col] = c
        mats.append(M)
    return RepMatrix(list(g.vectors), mats, list(B.weights))


def rep_on_fields(n: int, k: int) -> RepMatrix:
    """``ad`` of ``X_1`` on every degree-k field (S^k tensor R^n), monomial basis."""
    g = sl_generators(n)
    S = FieldSpace(n, k)
    mats = []
    for X in g.vectors:
        M = _zeros(S.dim)
        for col in range(S.dim):
            for row, c in S.to_vector(lie_bracket(X, S.to_field({col: Fraction(1)}))).items():
                M[row, col] = c
        mats.append(M)
    return RepMatrix(list(g.vectors), mats, [S.weight(c) for c in range(S.dim)])


def rep_on_constant_multivectors(n: int, m: int) -> RepMatrix:
    """``L_X`` of ``X_1`` on constant m-vectors, basis ``d_J`` with J increasing."""
    g = sl_generators(n)
    R = poly_ring(n)
    idx = list(itertools.combinations(range(n), m))
    pos = {J: a for a, J in enumerate(idx)}
    mats = []
    for X in g.vectors:
        M = _zeros(len(idx))
        for col, J in enumerate(idx):
            for K, c in lie_derivative_vec(X, basis_vec(R, J)).terms.items():
                M[pos[K], col] = c.constant_term()
        mats.append(M)
    weights = [tuple(-1 if i in J else 0 for i in range(n)) for J in idx]
    return RepMatrix(list(g.vectors), mats, weights)


def linear_field_matrix(X: MultiVec) -> np.ndarray:
    """``sum a_ij x_j d_i -> (a_ij)``."""
    n = X.n
    M = _zeros(n)
    for (i,), c in X.terms.items():
        for e, v in c.terms.items():
            M[i, e.index(1)] = v
    return M


def grading_check(n: int, k: int, l: int) -> bool:
    """Every bracket of basis fields of X_k and X_l lies in X_{k+l-1}."""
    A, B = basis_divfree(n, k), basis_divfree(n, l)
    target = k + l - 1
    for X in A.vectors:
        for Y in B.vectors:
            Z = lie_bracket(X, Y)
            if target < 0:
                if Z:
                    return False
                continue
            if not basis_divfree(n, target).contains(Z):
                return False
    return True


def equivariant_dim(src: RepMatrix, tgt: RepMatrix, prune: bool = True) -> int:
    """``dim {D : D S_g = T_g D for all generators g}``.

    Diagonal generators act diagonally on both bases, so ``D`` can only
    connect basis vectors of equal weight; the remaining unknowns are then
    constrained by every generator.  ``prune=False`` keeps all unknowns.
    """
    if len(src.matrices) != len(tgt.matrices):
        raise ValueError("representations of different algebras")
    by_weight: Dict[Tuple, List[int]] = {}
    for a, w in enumerate(src.weights):
        by_weight.setdefault(_weight_key(w), []).append(a)
    unknowns: Dict[Tuple[int, int], int] = {}
    for b, w in enumerate(tgt.weights):
        cands = by_weight.get(_weight_key(w), []) if prune else range(src.dim)
        for a in cands:
            unknowns[(b, a)] = len(unknowns)
    if not unknowns:
        return 0
    rows: Dict[Tuple[int, int, int], Dict[int, object]] = {}
    for g, (S, T) in enumerate(zip(src.matrices, tgt.matrices)):
        Tn = [[(r, T[r, c]) for r in range(T.shape[0]) if T[r, c]] for c in range(T.shape[1])]
        Sn = [[(c2, S[c, c2]) for c2 in range(S.shape[1]) if S[c, c2]] for c in range(S.shape[0])]
        # (T D - D S)[b, a]
        for (c, a), u in unknowns.items():
            for b, v in Tn[c]:
                r = rows.setdefault((g, b, a), {})
                r[u] = r.get(u, 0) + v
        for (b, c), u in unknowns.items():
            for a, v in Sn[c]:
                r = rows.setdefault((g, b, a), {})
                r[u] = r.get(u, 0) - v
    return len(unknowns) - linalg.rank(r for r in rows.values())


def intertwiner_dim(n: int, k: int) -> int:
    """sl(n)-equivariant maps ``X_k -> wedge^{n-2} R^n``."""
    if n < 3 or k < 0:
        raise ValueError("need n >= 3")
    return equivariant_dim(rep_on_divfree(n, k), rep_on_constant_multivectors(n, n - 2))


def endo_dim_tensor(n: int, k: int) -> int:
    """sl(n)-equivariant endomorphisms of all degree-k fields."""
    if n < 2 or k < 0:
        raise ValueError("need n >= 2")
    R = rep_on_fields(n, k)
    return equivariant_dim(R, R)


# -- algebras built from fields --------------------------------------------

def _algebra_from_bases(bases: List[GradedBasis], window: Optional[int], labels_prefix="X"):
    fields, grading, owner = [], [], []
    for B in bases:
        for a, X in enumerate(B.vectors):
            fields.append(X)
            grading.append(B.k)
            owner.append((B.k, a))
    offset = {}
    pos = 0
    for B in bases:
        offset[B.k] = pos
        pos += len(B)
    dim = len(fields)
    C = np.empty((dim, dim, dim), dtype=object)
    C.fill(0)
    n = fields[0].n if fields else 2
    for i, X in enumerate(fields):
        for j, Y in enumerate(fields):
            t = grading[i] + grading[j] - 1
            if t not in offset:
                continue
            for a, c in enumerate(basis_divfree(n, t).coords(lie_bracket(X, Y))):
                if c:
                    C[i, j, offset[t] + a] = c
    labels = [f"{labels_prefix}{k}_{a + 1}" for k, a in owner]
    return fields, grading, C, labels


def sl_from_fields(n: int) -> FiniteAlgebra:
    fields, grading, C, labels = _algebra_from_bases([basis_divfree(n, 1)], None)
    alg = FiniteAlgebra(labels, C, "lie")
    alg.fields = fields
    return alg


def divfree_algebra(n: int, K: int) -> FiniteAlgebra:
    """``X_0 + ... + X_K`` with brackets of degree above K dropped."""
    bases = [basis_divfree(n, k) for k in range(K + 1)]
    fields, grading, C, labels = _algebra_from_bases(bases, K)
    kind = "lie" if K <= 1 else "truncated"
    alg = FiniteAlgebra(labels, C, kind, grading=grading, window=K)
    alg.fields = fields
    return alg


def constant_multivector_module(alg: FiniteAlgebra, m: int) -> Module:
    """``L_X`` on constant m-vectors, keeping only the constant part of the result."""
    fields = alg.fields
    n = fields[0].n
    R = poly_ring(n)
    idx = list(itertools.combinations(range(n), m))
    pos = {J: a for a, J in enumerate(idx)}
    A = np.empty((len(fields), len(idx), len(idx)), dtype=object)
    A.fill(0)
    for x, X in enumerate(fields):
        for col, J in enumerate(idx):
            for K, c in lie_derivative_vec(X, basis_vec(R, J)).terms.items():
                A[x, pos[K], col] = c.constant_term()
    return Module(f"wedge({n},{m})", A, len(idx))


def whitehead_h1(n: int, coefficients: str = "wedge") -> int:
    """``dim H^1(sl(n), wedge^{n-2} R^n)`` (or trivial coefficients)."""
    if n < 3:
        raise ValueError("need n >= 3")
    alg = sl_from_fields(n)
    mod = trivial(alg) if coefficients == "trivial" else constant_multivector_module(alg, n - 2)
    return h_dim(alg, mod, 1)


def rep_table(n: int, kmax: int) -> List[Dict[str, object]]:
    rows = []
    for k in range(kmax + 1):
        B = basis_divfree(n, k)
        rows.append({
            "n": n,
            "k": k,
            "dim": len(B),
            "formula": divfree_dim_formula(n, k),
            "grading": all(grading_check(n, k, l) for l in range(kmax + 1 - k)),
            "intertwiner": intertwiner_dim(n, k) if k >= 2 and n >= 3 else None,
            "endo": endo_dim_tensor(n, k) if k >= 2 else None,
        })
    return rows
