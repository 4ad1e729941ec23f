"""Chevalley-Eilenberg and Loday cochain complexes of finite-dimensional algebras.

A q-cochain with values in an m-dimensional module is a dense numpy object
array of shape ``(d,)*q + (m,)``; entry ``c[i1, ..., iq, a]`` is the a-th
coordinate of ``c(e_i1, ..., e_iq)``.  Structure constants are stored as
``C[i, j, k]`` = coefficient of ``e_k`` in ``[e_i, e_j]`` and a module action
as ``A[i]`` = matrix of ``e_i`` acting on the module.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg


class AlgebraError(ValueError):
    pass


def _num(x):
    """Normalise to int when integral (object-array arithmetic is faster on ints)."""
    x = Fraction(x)
    return int(x) if x.denominator == 1 else x


def _obj(shape) -> np.ndarray:
    a = np.empty(shape, dtype=object)
    a.fill(0)
    return a


def _normalise(a: np.ndarray) -> np.ndarray:
    out = np.empty(a.shape, dtype=object)
    flat_in, flat_out = a.reshape(-1), out.reshape(-1)
    for i, v in enumerate(flat_in):
        flat_out[i] = _num(v)
    return out


class FiniteAlgebra:
    """Bilinear bracket on Q^d given by structure constants.

    ``kind`` is ``"lie"`` (antisymmetry and Jacobi checked), ``"leibniz"``
    (left Leibniz identity checked) or ``"truncated"`` (nothing checked; see
    :meth:`window_triples`).
    """

    def __init__(self, labels: Sequence[str], consts, kind: str = "lie", grading=None,
                 window: Optional[int] = None, check: bool = True):
        self.labels = list(labels)
        self.dim = len(self.labels)
        C = _normalise(np.asarray(consts, dtype=object))
        if C.shape != (self.dim,) * 3:
            raise AlgebraError(f"structure constants must have shape {(self.dim,) * 3}")
        if kind not in ("lie", "leibniz", "truncated"):
            raise AlgebraError(f"unknown algebra kind {kind!r}")
        self.C = C
        self.kind = kind
        self.grading = list(grading) if grading is not None else None
        self.window = window
        if check and kind != "truncated":
            bad = self.identity_failures()
            if bad:
                raise AlgebraError(f"{kind} identity fails on basis triple {bad[0]}")

    def bracket(self, x: Sequence, y: Sequence) -> np.ndarray:
        x = np.asarray(x, dtype=object)
        y = np.asarray(y, dtype=object)
        return np.tensordot(np.tensordot(x, self.C, axes=([0], [0])), y, axes=([0], [0]))

    def leibniz_defect(self, i, j, k) -> np.ndarray:
        """``[x,[y,z]] - [[x,y],z] - [y,[x,z]]`` on basis elements."""
        C = self.C
        yz, xy, xz = C[j, k], C[i, j], C[i, k]
        return (np.tensordot(yz, C[i], axes=([0], [0]))
                - np.tensordot(xy, C[:, k], axes=([0], [0]))
                - np.tensordot(xz, C[j], axes=([0], [0])))

    def identity_failures(self, triples=None) -> List[Tuple[int, int, int]]:
        d = self.dim
        bad = []
        if self.kind == "lie":
            for i in range(d):
                for j in range(i, d):
                    if any(self.C[i, j] + self.C[j, i]):
                        bad.append((i, j, j))
        if triples is None:
            triples = itertools.product(range(d), repeat=3)
        for t in triples:
            if any(self.leibniz_defect(*t)):
                bad.append(t)
        return bad

    def is_lie(self) -> bool:
        return self.kind == "lie"

    def window_triples(self) -> List[Tuple[int, int, int]]:
        """Basis triples whose nested brackets stay inside the grading window."""
        d = self.dim
        if self.grading is None or self.window is None:
            return list(itertools.product(range(d), repeat=3))
        g, K = self.grading, self.window
        return [t for t in itertools.product(range(d), repeat=3)
                if g[t[0]] + g[t[1]] + g[t[2]] - 2 <= K
                and all(g[a] + g[b] - 1 <= K for a, b in itertools.combinations(t, 2))]

    def jacobi_holds(self) -> bool:
        if self.kind != "truncated":
            return True
        if getattr(self, "_jacobi", None) is None:
            self._jacobi = not self.identity_failures()
        return self._jacobi

    def squares_span(self) -> List[np.ndarray]:
        """A basis of the span of ``[x, x]`` (the ideal of squares is the left ideal it generates)."""
        d = self.dim
        e = linalg.Echelon()
        gens = []
        for i in range(d):
            for j in range(i, d):
                v = self.C[i, j] + self.C[j, i] if i != j else self.C[i, i]
                if e.add({k: c for k, c in enumerate(v) if c}):
                    gens.append(v)
        # close under left multiplication
        queue = list(gens)
        while queue:
            v = queue.pop()
            for i in range(d):
                w = np.tensordot(v, self.C[i], axes=([0], [0]))
                if e.add({k: c for k, c in enumerate(w) if c}):
                    gens.append(w)
                    queue.append(w)
        return gens


class Module:
    """Left module: ``action[i]`` is the m x m matrix of ``e_i``."""

    def __init__(self, name: str, action, dim: int):
        self.name = name
        self.dim = dim
        self.A = _normalise(np.asarray(action, dtype=object).reshape((-1, dim, dim)))

    def check(self, alg: FiniteAlgebra) -> bool:
        """``A_[x,y] = A_x A_y - A_y A_x`` on all basis pairs."""
        A = self.A
        for i in range(alg.dim):
            for j in range(alg.dim):
                lhs = np.tensordot(alg.C[i, j], A, axes=([0], [0]))
                rhs = A[i].dot(A[j]) - A[j].dot(A[i])
                if (lhs != rhs).any():
                    return False
        return True


# -- differentials -----------------------------------------------------------

def _arity(c: np.ndarray) -> int:
    return c.ndim - 1


def ce_d(c: np.ndarray, alg: FiniteAlgebra, mod: Module) -> np.ndarray:
    """Chevalley-Eilenberg differential (0-based positions)::

        dc(x0..xq) = sum_i (-1)^i x_i . c(..^i..)
                   + sum_{i<j} (-1)^(i+j) c([x_i, x_j], ..^i..^j..)
    """
    q = _arity(c)
    d = alg.dim
    if q > d:
        raise AlgebraError(f"arity {q} exceeds algebra dimension {d}")
    return _differential(c, alg, mod, loday=False)


def loday_d(c: np.ndarray, alg: FiniteAlgebra, mod: Module) -> np.ndarray:
    """Loday differential; ``[x_i, x_j]`` replaces ``x_j`` (1-based i, j)::

        dc(x1..x_{q+1}) = sum_{i<j} (-1)^i c(..^i.., [x_i,x_j] at j, ..)
                        + sum_i (-1)^(i+1) x_i . c(..^i..)
    """
    return _differential(c, alg, mod, loday=True)


def _differential(c, alg, mod, loday):
    q = _arity(c)
    d, m = alg.dim, mod.dim
    if c.shape != (d,) * q + (m,):
        raise AlgebraError(f"cochain shape {c.shape} does not match algebra/module")
    out = _obj((d,) * (q + 1) + (m,))
    # action term: A[x, a, b] c[..., b] -> (x, ..., a)
    T = np.moveaxis(np.tensordot(mod.A, c, axes=([2], [q])), 1, -1)
    for i in range(q + 1):
        t = np.moveaxis(T, 0, i)
        out = out + t if i % 2 == 0 else out - t
    if q == 0:
        return out
    for i in range(q + 1):
        for j in range(i + 1, q + 1):
            if loday:
                U = np.tensordot(alg.C, c, axes=([2], [j - 1]))
                sign = -1 if i % 2 == 0 else 1  # (-1)^(i+1) with 0-based i
            else:
                U = np.tensordot(alg.C, c, axes=([2], [0]))
                sign = 1 if (i + j) % 2 == 0 else -1
            U = np.moveaxis(U, [0, 1], [i, j])
            out = out + U if sign > 0 else out - U
    return out


# -- hat transform -----------------------------------------------------------

def coadjoint(alg: FiniteAlgebra) -> Module:
    """Dual of the algebra with ``(x . T)(y) = -T([x, y])``."""
    d = alg.dim
    A = _obj((d, d, d))
    for x in range(d):
        for y in range(d):
            for k in range(d):
                A[x, y, k] = -alg.C[x, y, k]
    return Module("coadjoint", A, d)


def hat(c: np.ndarray) -> np.ndarray:
    """q-cochain with scalar values -> (q-1)-cochain with values in the dual."""
    if c.shape[-1] != 1 or _arity(c) < 1:
        raise AlgebraError("hat needs a scalar-valued cochain of arity >= 1")
    return c[..., 0].copy()


def unhat(c: np.ndarray) -> np.ndarray:
    return c[..., np.newaxis].copy()


# -- cohomology dimensions ---------------------------------------------------

def _basis_tuples(d: int, q: int, alternating: bool):
    if alternating:
        return list(itertools.combinations(range(d), q))
    return list(itertools.product(range(d), repeat=q))


def _alternating_basis_cochain(d, m, I, a):
    c = _obj((d,) * len(I) + (m,))
    for perm in itertools.permutations(range(len(I))):
        inv = sum(1 for x in range(len(perm)) for y in range(x + 1, len(perm)) if perm[x] > perm[y])
        c[tuple(I[p] for p in perm) + (a,)] = -1 if inv % 2 else 1
    return c


def differential_rows(alg: FiniteAlgebra, mod: Module, q: int, complex: str = "ce"):
    """Columns of the matrix of d on q-cochains, as sparse dicts over (q+1)-coordinates."""
    d, m = alg.dim, mod.dim
    alt = complex == "ce"
    src = _basis_tuples(d, q, alt)
    tgt = {t: n for n, t in enumerate(_basis_tuples(d, q + 1, alt))}
    cols = []
    for I in src:
        for a in range(m):
            if alt:
                c = _alternating_basis_cochain(d, m, I, a)
                dc = ce_d(c, alg, mod)
            else:
                c = _obj((d,) * q + (m,))
                c[I + (a,)] = 1
                dc = loday_d(c, alg, mod)
            col = {}
            for J, n in tgt.items():
                v = dc[J]
                for b in range(m):
                    if v[b]:
                        col[n * m + b] = v[b]
            cols.append(col)
    return cols, len(src) * m


def d_rank(alg, mod, q, complex="ce") -> int:
    if q < 0 or (complex == "ce" and q >= alg.dim):
        return 0
    cols, _ = differential_rows(alg, mod, q, complex)
    return linalg.rank(cols)


def cochain_dim(alg, mod, q, complex="ce") -> int:
    return len(_basis_tuples(alg.dim, q, complex == "ce")) * mod.dim


def h_dim(alg: FiniteAlgebra, mod: Module, q: int, complex: str = "ce") -> Optional[int]:
    """``dim H^q``; ``None`` when the complex is not a complex (truncated algebra without Jacobi)."""
    if not alg.jacobi_holds():
        return None
    if complex == "ce" and not alg.is_lie():
        raise AlgebraError("the CE complex needs a Lie algebra")
    if q > alg.dim and complex == "ce":
        return 0
    kernel = cochain_dim(alg, mod, q, complex) - d_rank(alg, mod, q, complex)
    return kernel - d_rank(alg, mod, q - 1, complex)


# -- builders ----------------------------------------------------------------

def _elementary(n, i, j):
    M = _obj((n, n))
    M[i, j] = 1
    return M


def sl_basis(n: int) -> Tuple[List[str], List[np.ndarray]]:
    """Off-diagonal ``E_ij`` (row-major) followed by ``H_i = E_ii - E_(i+1)(i+1)``."""
    labels, mats = [], []
    for i in range(n):
        for j in range(n):
            if i != j:
                labels.append(f"E{i + 1}{j + 1}")
                mats.append(_elementary(n, i, j))
    for i in range(n - 1):
        labels.append(f"H{i + 1}")
        mats.append(_elementary(n, i, i) - _elementary(n, i + 1, i + 1))
    return labels, mats


def sl_coords(M: np.ndarray) -> List:
    n = M.shape[0]
    out = [M[i, j] for i in range(n) for j in range(n) if i != j]
    acc = 0
    for i in range(n - 1):
        acc += M[i, i]
        out.append(acc)
    return out


def sl(n: int) -> FiniteAlgebra:
    labels, mats = sl_basis(n)
    d = len(mats)
    C = _obj((d, d, d))
    for a in range(d):
        for b in range(d):
            C[a, b] = sl_coords(mats[a].dot(mats[b]) - mats[b].dot(mats[a]))
    return FiniteAlgebra(labels, C, "lie")


def abelian(d: int) -> FiniteAlgebra:
    return FiniteAlgebra([f"e{i + 1}" for i in range(d)], _obj((d, d, d)), "lie")


def trivial(alg: FiniteAlgebra) -> Module:
    return Module("trivial", _obj((alg.dim, 1, 1)), 1)


def zero_module(d: int, m: int) -> Module:
    """Q^m on which every basis element of a d-dimensional algebra acts by 0."""
    return Module(f"zero({m})", _obj((d, m, m)), m)


def natural(n: int) -> Module:
    _, mats = sl_basis(n)
    return Module(f"natural({n})", np.array(mats, dtype=object), n)


def wedge_action_matrix(M: np.ndarray, m: int) -> Tuple[np.ndarray, List[Tuple[int, ...]]]:
    """Matrix of the derivation induced by ``M`` on ``wedge^m`` with sorted-tuple basis."""
    n = M.shape[0]
    basis = list(itertools.combinations(range(n), m))
    pos = {I: k for k, I in enumerate(basis)}
    W = _obj((len(basis), len(basis)))
    for col, I in enumerate(basis):
        for p, j in enumerate(I):
            for i in range(n):
                v = M[i, j]
                if not v:
                    continue
                J = I[:p] + (i,) + I[p + 1:]
                if len(set(J)) < m:
                    continue
                inv = sum(1 for x in range(m) for y in range(x + 1, m) if J[x] > J[y])
                W[pos[tuple(sorted(J))], col] += -v if inv % 2 else v
    return W, basis


def wedge(n: int, m: int) -> Module:
    _, mats = sl_basis(n)
    acts = [wedge_action_matrix(M, m)[0] for M in mats]
    dim = len(list(itertools.combinations(range(n), m)))
    return Module(f"wedge({n},{m})", np.array(acts, dtype=object).reshape((-1, dim, dim)), dim)


def adjoint(alg: FiniteAlgebra) -> Module:
    d = alg.dim
    A = _obj((d, d, d))
    for x in range(d):
        for y in range(d):
            for k in range(d):
                A[x, k, y] = alg.C[x, y, k]
    return Module("adjoint", A, d)


def hemisemidirect_sl2() -> FiniteAlgebra:
    """``sl(2) x R^2`` with ``[(x, v), (y, w)] = ([x, y], x . w)``: Leibniz, not Lie."""
    base = sl(2)
    _, mats = sl_basis(2)
    d = 5
    C = _obj((d, d, d))
    C[:3, :3, :3] = base.C
    for a in range(3):
        for j in range(2):
            for i in range(2):
                C[a, 3 + j, 3 + i] = mats[a][i, j]
    return FiniteAlgebra(base.labels + ["v1", "v2"], C, "leibniz")


def lie_quotient_check(rng: random.Random, trials: int = 5) -> bool:
    """A Loday coboundary whose primitive kills the squares is the pull-back of a CE coboundary.

    On the hemisemidirect algebra the squares span ``0 + R^2`` and the Lie
    quotient is sl(2); a random functional on sl(2) pulled back to the
    Leibniz algebra kills the squares, and its Loday differential must be
    alternating and equal to the pull-back of the CE differential.
    """
    L = hemisemidirect_sl2()
    g = sl(2)
    sq = L.squares_span()
    if len(sq) != 2 or any(v[:3].any() for v in sq):
        return False
    for _ in range(trials):
        eta_bar = _obj((3, 1))
        for i in range(3):
            eta_bar[i, 0] = Fraction(rng.randint(-5, 5), rng.randint(1, 4))
        eta = _obj((5, 1))
        eta[:3] = eta_bar
        psi = loday_d(eta, L, trivial(L))
        pulled = _obj((5, 5, 1))
        pulled[:3, :3] = ce_d(eta_bar, g, trivial(g))
        if (psi != pulled).any() or (psi != -np.swapaxes(psi, 0, 1)).any():
            return False
    return True


def random_cochain(rng: random.Random, d: int, q: int, m: int, alternating: bool,
                   bound: int = 5) -> np.ndarray:
    c = _obj((d,) * q + (m,))
    if alternating:
        for I in itertools.combinations(range(d), q):
            for a in range(m):
                v = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
                if v:
                    c = c + v * _alternating_basis_cochain(d, m, I, a)
    else:
        for I in itertools.product(range(d), repeat=q):
            for a in range(m):
                c[I + (a,)] = Fraction(rng.randint(-bound, bound), rng.randint(1, bound))
    return _normalise(c)


def is_zero(c: np.ndarray) -> bool:
    return not any(v for v in c.reshape(-1))


def parse_algebra(spec: str) -> FiniteAlgebra:
    import re
    spec = spec.replace(" ", "")
    m = re.fullmatch(r"sl\((\d+)\)", spec)
    if m:
        return sl(int(m.group(1)))
    m = re.fullmatch(r"abelian\((\d+)\)", spec)
    if m:
        return abelian(int(m.group(1)))
    m = re.fullmatch(r"divfree\((\d+),(\d+)\)", spec)
    if m:
        from .graded import divfree_algebra
        return divfree_algebra(int(m.group(1)), int(m.group(2)))
    if spec == "hemisemidirect":
        return hemisemidirect_sl2()
    raise AlgebraError(f"unknown algebra spec {spec!r}")


def parse_module(spec: str, alg: FiniteAlgebra) -> Module:
    import re
    spec = spec.replace(" ", "")
    if spec == "trivial":
        return trivial(alg)
    if spec == "adjoint":
        return adjoint(alg)
    if spec == "coadjoint":
        return coadjoint(alg)
    m = re.fullmatch(r"natural\((\d+)\)", spec)
    if m:
        N, M = int(m.group(1)), 1
    else:
        m = re.fullmatch(r"wedge\((\d+),(\d+)\)", spec)
        if not m:
            raise AlgebraError(f"unknown module spec {spec!r}")
        N, M = int(m.group(1)), int(m.group(2))
    if getattr(alg, "fields", None) is not None:
        return _field_module(alg, N, M, spec)
    mod = natural(N) if spec.startswith("natural") else wedge(N, M)
    if mod.A.shape[0] != alg.dim:
        raise AlgebraError(f"module {spec} does not act on an algebra of dimension {alg.dim}")
    return mod


def _field_module(alg: FiniteAlgebra, N: int, M: int, spec: str) -> Module:
    """Constant M-vectors under a polynomial field algebra, via the Lie derivative."""
    from .graded import constant_multivector_module
    if alg.fields[0].n != N:
        raise AlgebraError(f"module {spec} needs fields on R^{N}")
    mod = constant_multivector_module(alg, M)
    if not mod.check(alg):
        raise AlgebraError(f"{spec} is not a module of this algebra: the constant part of "
                           "L_X is not compatible with brackets of degree >= 2")
    return mod
