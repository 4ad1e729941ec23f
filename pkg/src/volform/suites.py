"""The invariant battery behind ``volform verify``.

Each suite draws its instances from ``random.Random(f"{seed}:{suite}")`` so
that selecting a subset of suites does not change the instances of the
others.  Wall times are reported only on request, which keeps the default
report byte-identical across runs.
"""
from __future__ import annotations

import itertools
import json
import platform
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb
from typing import Callable, Dict, List, Optional, Sequence

from . import __version__
from . import cohomology as co
from . import decompose as dec
from . import graded as gr
from . import ophom as oh
from . import randgen as rg
from . import torus as tor
from .forms import (Decomposable, MultiVec, contract, d, delta, delta_explicit, divergence, flat,
                    hamiltonian_field, hamiltonian_field_bivector, iota, leibniz_bracket,
                    leibniz_bracket_bivector, lie_bracket, lie_derivative, sharp, volume_form,
                    wedge, wedge_all)
from .scalars import GaussianRational, integrate_torus, make_ring, poly_ring, primitive_in_axis, trig_ring
from .textio import FORMAT_VERSION, format_value


@dataclass
class RunConfig:
    seed: int = 1
    n: Optional[int] = None
    deg_cap: int = 3
    freq_cap: int = 2
    scale: Fraction = Fraction(1)
    suites: Optional[List[str]] = None
    fmt: str = "tsv"
    timings: bool = False
    ring: Optional[str] = None

    def make(self, n: int):
        """Coefficient ring for the calculus suites; polynomial unless ``ring`` says otherwise."""
        return make_ring(self.ring or "poly", n)

    def count(self, base: int) -> int:
        return max(1, int(base * self.scale))

    def dims(self, default: Sequence[int]) -> List[int]:
        return [self.n] if self.n is not None else list(default)


@dataclass
class CheckResult:
    suite: str
    name: str
    instances: int = 0
    failures: List[str] = field(default_factory=list)
    seconds: float = 0.0


class _Checker:
    def __init__(self, suite: str, config: RunConfig):
        self.suite = suite
        self.config = config
        self.rng = random.Random(f"{config.seed}:{suite}")
        self.results: List[CheckResult] = []

    def check(self, name: str, count: int, body: Callable[[random.Random, int], Optional[str]]):
        """Run ``body`` ``count`` times; a returned string is a failure payload."""
        res = CheckResult(self.suite, name)
        t = time.perf_counter()
        for i in range(count):
            res.instances += 1
            try:
                payload = body(self.rng, i)
            except Exception as exc:  # a crash is a failure, never a silent skip
                payload = f"exception {type(exc).__name__}: {exc}"
            if payload:
                res.failures.append(payload)
        res.seconds = time.perf_counter() - t
        self.results.append(res)

    def fact(self, name: str, ok_payload: Callable[[], Optional[str]]):
        self.check(name, 1, lambda rng, i: ok_payload())


def _show(*objs) -> str:
    return " | ".join(format_value(o) for o in objs)


# -- suites ------------------------------------------------------------------

def suite_scalar(c: _Checker):
    cfg = c.config
    N = cfg.count(100)
    kinds = [cfg.ring] if cfg.ring else ["poly", "trig"]
    rings = [make_ring(k, n) for k in kinds for n in cfg.dims([3])]

    def ring(i):
        return rings[i % len(rings)]

    def commute(rng, i):
        R = ring(i)
        f = rg.coefficient(rng, R, cfg.deg_cap, cfg.freq_cap)
        a, b = rng.randrange(R.n), rng.randrange(R.n)
        if f.derive(a).derive(b) != f.derive(b).derive(a):
            return _show(f) + f" axes {a + 1},{b + 1}"

    def product(rng, i):
        R = ring(i)
        f = rg.coefficient(rng, R, cfg.deg_cap, cfg.freq_cap)
        g = rg.coefficient(rng, R, cfg.deg_cap, cfg.freq_cap)
        j = rng.randrange(R.n)
        if (f * g).derive(j) != f.derive(j) * g + f * g.derive(j):
            return _show(f, g) + f" axis {j + 1}"

    def stokes(rng, i):
        R = trig_ring(rings[0].n)
        f = rg.trig(rng, R.n, cfg.freq_cap)
        if any(integrate_torus(f.derive(j)) for j in range(R.n)):
            return _show(f)

    def positivity(rng, i):
        f = rg.trig(rng, rings[0].n, cfg.freq_cap)
        v = integrate_torus(f * f.conjugate())
        if v.im or v.re < 0:
            return _show(f)

    def primitive(rng, i):
        n = rings[0].n
        f = rg.poly(rng, n, cfg.deg_cap)
        j = rng.randrange(n)
        if primitive_in_axis(f, j).derive(j) != f:
            return _show(f) + f" axis {j + 1}"

    c.check("derivations commute", N, commute)
    c.check("product rule", N, product)
    c.check("integral of derivative vanishes", N, stokes)
    c.check("integral of |f|^2 is real and >= 0", N, positivity)
    c.check("primitive is a right inverse", N, primitive)


def suite_cartan(c: _Checker):
    cfg = c.config
    N = cfg.count(200)
    dims = cfg.dims([3, 4])

    def ring(i):
        return cfg.make(dims[i % len(dims)])

    def vf(rng, R):
        return rg.multivec(rng, R, 1, cfg.deg_cap, components=2, terms=2)

    def dd(rng, i):
        R = ring(i)
        w = rg.form(rng, R, rng.randint(0, R.n), cfg.deg_cap)
        if d(d(w)):
            return _show(w)

    def deltadelta(rng, i):
        R = ring(i)
        A = rg.multivec(rng, R, rng.randint(2, R.n), cfg.deg_cap)
        if delta(delta(A)):
            return _show(A)

    def sign(rng, i):
        R = ring(i)
        p = rng.randint(1, R.n - 1)
        q = rng.randint(1, R.n - p)
        A = wedge_all([vf(rng, R) for _ in range(p)])
        B = wedge_all([vf(rng, R) for _ in range(q)])
        mu = volume_form(R)
        if contract(wedge(A, B), mu) != contract(B, contract(A, mu)):
            return _show(A, B)

    def musical(rng, i):
        R = ring(i)
        A = rg.multivec(rng, R, rng.randint(0, R.n), cfg.deg_cap)
        w = rg.form(rng, R, rng.randint(0, R.n), cfg.deg_cap)
        if sharp(flat(A)) != A or flat(sharp(w)) != w:
            return _show(A, w)

    def prop_a1(rng, i):
        R = ring(i)
        fs = [vf(rng, R) for _ in range(rng.choice([2, 3]))]
        if delta_explicit(Decomposable(fs)) != delta(wedge_all(fs)):
            return _show(*fs)

    def cor_a2(rng, i):
        R = ring(i)
        X1, X2 = vf(rng, R), vf(rng, R)
        if hamiltonian_field_bivector(X1, X2) != hamiltonian_field(flat(wedge(X1, X2))):
            return _show(X1, X2)

    def prop_a3(rng, i):
        R = ring(i)
        fs = [rg.multivec(rng, R, 1, 2, components=2, terms=1) for _ in range(4)]
        lifted = sharp(leibniz_bracket(flat(wedge(fs[0], fs[1])), flat(wedge(fs[2], fs[3]))))
        if not (leibniz_bracket_bivector(*fs) == lifted == leibniz_bracket_bivector(*fs, expanded=True)):
            return _show(*fs)

    def lie_iota(rng, i):
        R = ring(i)
        X, Y = vf(rng, R), vf(rng, R)
        w = rg.form(rng, R, rng.randint(1, R.n), cfg.deg_cap)
        lhs = lie_derivative(X, iota(Y, w)) - iota(Y, lie_derivative(X, w))
        if lhs != iota(lie_bracket(X, Y), w):
            return _show(X, Y, w)

    def lie_lie(rng, i):
        R = ring(i)
        X, Y = vf(rng, R), vf(rng, R)
        w = rg.form(rng, R, rng.randint(0, R.n), 2)
        lhs = lie_derivative(X, lie_derivative(Y, w)) - lie_derivative(Y, lie_derivative(X, w))
        if lhs != lie_derivative(lie_bracket(X, Y), w):
            return _show(X, Y, w)

    def div_mu(rng, i):
        R = ring(i)
        X = vf(rng, R)
        mu = volume_form(R)
        if lie_derivative(X, mu) != mu.scale(divergence(X)):
            return _show(X)

    c.check("d^2 = 0", N, dd)
    c.check("delta^2 = 0", N, deltadelta)
    c.check("contraction sign convention", N, sign)
    c.check("flat and sharp are inverse", N, musical)
    c.check("explicit delta formula", N, prop_a1)
    c.check("X_alpha from bivector factors", N, cor_a2)
    c.check("bivector bracket, compact and expanded", N, prop_a3)
    c.check("[L_X, iota_Y] = iota_[X,Y]", N, lie_iota)
    c.check("[L_X, L_Y] = L_[X,Y]", N, lie_lie)
    c.check("L_X mu = div(X) mu", N, div_mu)


def suite_leibniz(c: _Checker):
    cfg = c.config
    dims = cfg.dims([3, 4])

    def ring(i):
        return cfg.make(dims[i % len(dims)])

    def pot(rng, R, deg=None):
        return rg.form(rng, R, R.n - 2, cfg.deg_cap if deg is None else deg, components=2, terms=2)

    def left(rng, i):
        R = ring(i)
        a, b, g = pot(rng, R), pot(rng, R), pot(rng, R)
        lb = leibniz_bracket
        if lb(a, lb(b, g)) != lb(lb(a, b), g) + lb(b, lb(a, g)):
            return _show(a, b, g)

    def hom(rng, i):
        R = ring(i)
        a, b = pot(rng, R), pot(rng, R)
        if hamiltonian_field(leibniz_bracket(a, b)) != lie_bracket(hamiltonian_field(a), hamiltonian_field(b)):
            return _show(a, b)

    def sym(rng, i):
        R = ring(i)
        a, b = pot(rng, R), pot(rng, R)
        Xa, Xb = hamiltonian_field(a), hamiltonian_field(b)
        if leibniz_bracket(a, b) + leibniz_bracket(b, a) != d(iota(Xa, b) + iota(Xb, a)):
            return _show(a, b)

    def divfree(rng, i):
        R = ring(i)
        a = pot(rng, R)
        if lie_derivative(hamiltonian_field(a), volume_form(R)):
            return _show(a)

    def central(rng, i):
        R = ring(i)
        closed = d(rg.form(rng, R, R.n - 3, cfg.deg_cap)) + rg.constant_form(rng, R, R.n - 2)
        b = pot(rng, R)
        if leibniz_bracket(closed, b):
            return _show(closed, b)

    c.check("left Leibniz identity", cfg.count(500), left)
    c.check("X of bracket is bracket of X", cfg.count(200), hom)
    c.check("symmetric part is exact", cfg.count(200), sym)
    c.check("X_alpha is divergence-free", cfg.count(200), divfree)
    c.check("closed forms are left-central", cfg.count(200), central)


def suite_brackets(c: _Checker):
    cfg = c.config
    dims = cfg.dims([3, 4])

    def body(rng, i):
        R = poly_ring(dims[i % len(dims)])
        B = rg.multivec(rng, R, 2, cfg.deg_cap, components=rng.randint(1, comb(R.n, 2)), terms=2)
        w = dec.commutator_decompose(B)
        if not w.verify() or w.count > dec.bracket_bound(R.n):
            return _show(B)

    c.check("bracket witnesses re-verify within bound", cfg.count(200), body)


def suite_squares(c: _Checker):
    cfg = c.config
    dims = cfg.dims([3, 4])

    def body(rng, i):
        R = poly_ring(dims[i % len(dims)])
        b = rg.form(rng, R, R.n - 3, cfg.deg_cap, components=R.n, terms=2)
        w = dec.square_decompose(b)
        if not w.verify() or w.count > dec.square_bound(R.n):
            return "witness " + _show(b)
        for p in w.potentials:
            if not p.check_factorisation():
                return "factorisation " + _show(b, p.alpha)
            if d(p.contraction()) != leibniz_bracket(p.alpha, p.alpha):
                return "square " + _show(b, p.alpha)
        alphas = dec.squares_of_exact(d(b), b)
        total = d(b) - d(b)
        for a in alphas:
            total = total + leibniz_bracket(a, a)
        if total != d(b):
            return "sum of squares " + _show(b)

    c.check("square witnesses re-verify within bound", cfg.count(200), body)


def suite_rep(c: _Checker):
    cfg = c.config
    dims = cfg.dims([3, 4])

    for n in dims:
        for k in range(4 if n != 3 else 5):
            c.fact(f"dim X_{k}(R^{n}) = {gr.divfree_dim_formula(n, k)}",
                   lambda n=n, k=k: None if len(gr.basis_divfree(n, k)) == gr.divfree_dim_formula(n, k)
                   else f"got {len(gr.basis_divfree(n, k))}")
        pairs = [(k, l) for k in range(5) for l in range(5) if k + l <= 4]
        c.fact(f"grading closes for k+l <= 4, n={n}",
               lambda n=n: None if all(gr.grading_check(n, k, l) for k, l in pairs) else "grading fails")
        c.fact(f"sl({n}) acts on X_2 by a representation",
               lambda n=n: None if gr.rep_on_divfree(n, 2).check(gr.basis_divfree(n, 1)) else "commutator law fails")
        c.fact(f"action on constant {n - 2}-vectors is wedge of -a, n={n}",
               lambda n=n: _constant_action_payload(n))
        c.fact(f"whitehead_h1({n}) = 0", lambda n=n: _eq(gr.whitehead_h1(n), 0))
        for k in (2, 3):
            c.fact(f"intertwiner_dim({n},{k}) = 0", lambda n=n, k=k: _eq(gr.intertwiner_dim(n, k), 0))
            c.fact(f"endo_dim_tensor({n},{k}) = 2", lambda n=n, k=k: _eq(gr.endo_dim_tensor(n, k), 2))
    c.fact("H^1(sl(3), trivial) = 0", lambda: _eq(gr.whitehead_h1(3, "trivial"), 0))


def _eq(got, want) -> Optional[str]:
    return None if got == want else f"got {got}, expected {want}"


def _constant_action_payload(n: int) -> Optional[str]:
    rep = gr.rep_on_constant_multivectors(n, n - 2)
    for X, M in zip(rep.gens, rep.matrices):
        W, _ = co.wedge_action_matrix(-gr.linear_field_matrix(X), n - 2)
        if (W != M).any():
            return _show(X)
    return None


def suite_coho(c: _Checker):
    cfg = c.config
    sl2, sl3 = co.sl(2), co.sl(3)
    L = co.hemisemidirect_sl2()
    pairs = [("sl(2)", sl2, co.trivial(sl2)), ("sl(2)", sl2, co.natural(2)),
             ("sl(2)", sl2, co.adjoint(sl2)), ("sl(2)", sl2, co.coadjoint(sl2)),
             ("sl(3)", sl3, co.natural(3))]
    N = cfg.count(100)

    for label, alg, mod in pairs:
        name = f"{label} with {mod.name}"

        def ce(rng, i, alg=alg, mod=mod):
            q = i % 3
            x = co.random_cochain(rng, alg.dim, q, mod.dim, True)
            if not co.is_zero(co.ce_d(co.ce_d(x, alg, mod), alg, mod)):
                return f"arity {q}"

        def lo(rng, i, alg=alg, mod=mod):
            q = i % 3 if alg.dim <= 3 else i % 2
            x = co.random_cochain(rng, alg.dim, q, mod.dim, False)
            if not co.is_zero(co.loday_d(co.loday_d(x, alg, mod), alg, mod)):
                return f"arity {q}"

        def agree(rng, i, alg=alg, mod=mod):
            q = 1 + i % 2
            x = co.random_cochain(rng, alg.dim, q, mod.dim, True)
            if (co.ce_d(x, alg, mod) != co.loday_d(x, alg, mod)).any():
                return f"arity {q}"

        small = N if alg.dim <= 3 else cfg.count(10)
        c.check(f"ce_d^2 = 0 on {name}", small, ce)
        c.check(f"loday_d^2 = 0 on {name}", small, lo)
        c.check(f"loday_d = ce_d on alternating cochains, {name}", small, agree)

    def leib(rng, i):
        mod = co.coadjoint(L) if i % 2 else co.trivial(L)
        q = i % 3
        x = co.random_cochain(rng, L.dim, q, mod.dim, False)
        if not co.is_zero(co.loday_d(co.loday_d(x, L, mod), L, mod)):
            return f"arity {q} {mod.name}"

    def hat_d(rng, i):
        A = L if i % 2 else sl2
        q = 1 + i % 2
        psi = co.random_cochain(rng, A.dim, q, 1, False)
        lhs = co.loday_d(co.hat(psi), A, co.coadjoint(A))
        rhs = co.hat(co.loday_d(psi, A, co.trivial(A)))
        if (lhs != rhs).any() or (co.unhat(co.hat(psi)) != psi).any():
            return f"arity {q}"

    c.check("loday_d^2 = 0 on a Leibniz algebra", N, leib)
    c.check("hat intertwines differentials", N, hat_d)
    c.fact("bracket is a Loday 2-cocycle with values in L, zero action",
           lambda: None if co.is_zero(co.loday_d(L.C, L, co.zero_module(L.dim, L.dim))) else "not closed")
    c.fact("with the adjoint action the bracket's differential is the symmetric part",
           lambda: _symmetric_part_payload(L))
    c.fact("H^2(sl(2), R) = 0", lambda: _eq(co.h_dim(sl2, co.trivial(sl2), 2), 0))
    c.fact("H^1(sl(3), R^3) = 0", lambda: _eq(co.h_dim(sl3, co.natural(3), 1), 0))
    c.fact("H^1(abelian R^2, R) = 2", lambda: _eq(co.h_dim(co.abelian(2), co.trivial(co.abelian(2)), 1), 2))
    c.fact("Loday coboundary killing squares descends to a CE coboundary",
           lambda: None if co.lie_quotient_check(random.Random(f"{cfg.seed}:inj")) else "does not descend")


def _symmetric_part_payload(L) -> Optional[str]:
    """``d[.,.](x,y,z) = [[x,y],z] + [z,[x,y]]`` for the adjoint action."""
    dc = co.loday_d(L.C, L, co.adjoint(L))
    for x, y, z in itertools.product(range(L.dim), repeat=3):
        xy = L.C[x, y]
        want = L.bracket(xy, _unit(L.dim, z)) + L.bracket(_unit(L.dim, z), xy)
        if (dc[x, y, z] != want).any():
            return f"basis triple {(x, y, z)}"
    return None


def _unit(d: int, i: int):
    return [1 if j == i else 0 for j in range(d)]


def suite_torus(c: _Checker):
    cfg = c.config
    dims = cfg.dims([3, 4])
    N = cfg.count(200)
    F = cfg.freq_cap

    def ring(i):
        return trig_ring(dims[i % len(dims)])

    def small_form(rng, R, degree):
        return rg.form(rng, R, degree, freq=F, components=2, terms=2)

    def small_divfree(rng, R):
        return rg.divfree(rng, R, freq=F, terms=1)

    def homotopy(rng, i):
        R = ring(i)
        w = small_form(rng, R, rng.randint(0, R.n))
        w = w - tor.constant_mode(w)
        if d(tor.homotopy(w)) + tor.homotopy(d(w)) != w:
            return _show(w)

    def kills(rng, i):
        R = ring(i)
        a = small_form(rng, R, R.n - 2)
        b = small_form(rng, R, R.n - 3)
        if tor.normal_form(d(b)).rep or tor.normal_form(a + d(b)) != tor.normal_form(a):
            return _show(a, b)
        nf = tor.normal_form(a)
        if tor.normal_form(nf.rep) != nf:
            return "idempotence " + _show(a)

    def jacobi(rng, i):
        R = ring(i)
        A, B, C = (tor.normal_form(small_form(rng, R, R.n - 2)) for _ in range(3))
        br = tor.central_bracket
        if br(A, B).rep != -br(B, A).rep:
            return "antisymmetry " + _show(A.rep, B.rep)
        if (br(A, br(B, C)).rep + br(B, br(C, A)).rep + br(C, br(A, B)).rep):
            return "jacobi " + _show(A.rep, B.rep, C.rep)
        if br(A, B) != tor.normal_form(leibniz_bracket(A.rep, B.rep)):
            return "agrees with Leibniz bracket " + _show(A.rep, B.rep)

    def lich(rng, i):
        R = ring(i)
        X, Y, Z = (small_divfree(rng, R) for _ in range(3))
        s = rg.closed_constant_2form(rng, R)
        if tor.cocycle_defect(lambda U, V: tor.lichnerowicz(s, U, V), X, Y, Z):
            return _show(s, X, Y, Z)
        if tor.lichnerowicz(s, X, Y) != -tor.lichnerowicz(s, Y, X):
            return "antisymmetry " + _show(s, X, Y)

    def cycle(rng, i):
        R = ring(i)
        X, Y, Z = (small_divfree(rng, R) for _ in range(3))
        C = rg.choose(rng, tor.cycles(R.n))
        if tor.cocycle_defect(lambda U, V: tor.cycle_cocycle(C, U, V), X, Y, Z):
            return f"cycle {C} " + _show(X, Y, Z)

    def vs(rng, i):
        R = ring(i)
        a, b = small_form(rng, R, R.n - 2), small_form(rng, R, R.n - 2)
        s = rg.closed_constant_2form(rng, R)
        left, right = tor.cocycle_vs_bracket(s, a, b)
        if left != right:
            return _show(s, a, b)

    def centre(rng, i):
        R = ring(i)
        const = rg.form(rng, R, R.n - 2, freq=0, components=2, terms=1)
        A = tor.normal_form(const)
        B = tor.normal_form(small_form(rng, R, R.n - 2))
        if not A.is_central() or tor.central_bracket(A, B).rep or tor.central_bracket(B, A).rep:
            return "constant class not central " + _show(const)
        if B.is_central() != B.is_constant():
            return "central class with nonconstant normal form " + _show(B.rep)

    c.check("dh + hd = id off constant modes", N, homotopy)
    c.check("normal form kills exact forms", N, kills)
    c.check("central bracket: antisymmetry and Jacobi", N, jacobi)
    c.check("Lichnerowicz cocycle identity", N, lich)
    c.check("cycle cocycle identity", N, cycle)
    c.check("cocycle equals functional of the bracket", N, vs)
    c.check("constant classes are exactly the centre", N, centre)
    c.fact("pairing matrix for n=3 has rank 3", lambda: _eq(tor.pairing_rank(3), 3))


def suite_ophom(c: _Checker):
    cfg = c.config

    def factor(rng, i):
        n = rng.choice([2, 3])
        k = rng.randint(1, n - 1)
        Q0 = rg.diffop(rng, n, k + 1, order=rng.randint(0, 3), width=rng.randint(1, 2))
        D = oh.compose_d(Q0)
        f = oh.factor_through_d(D)
        if not f.ok:
            return json.dumps(oh.to_json(Q0), sort_keys=True)

    def trunc(rng, i):
        n = rng.choice([2, 3])
        D = rg.diffop(rng, n, rng.randint(0, n), order=3, width=rng.randint(1, 2))
        l = rng.randint(0, 3)
        if oh.truncate(D, l) != oh.truncate_by_evaluation(D, l):
            return json.dumps(oh.to_json(D), sort_keys=True) + f" l={l}"

    c.check("factor_through_d with Properties 1 and 2 at every stage", cfg.count(50), factor)
    c.check("truncation by filter equals truncation by evaluation", cfg.count(50), trunc)
    c.fact("Euler eigenvalue check, n <= 3, k <= 2, l <= 3",
           lambda: None if all(oh.euler_eigencheck(k, l, n) for n in (1, 2, 3)
                               for k in range(min(n, 2) + 1) for l in range(4)) else "fails")


SUITES: Dict[str, Callable[[_Checker], None]] = {
    "scalar": suite_scalar,
    "cartan": suite_cartan,
    "leibniz": suite_leibniz,
    "brackets": suite_brackets,
    "squares": suite_squares,
    "rep": suite_rep,
    "coho": suite_coho,
    "torus": suite_torus,
    "ophom": suite_ophom,
}


@dataclass
class Report:
    config: RunConfig
    results: List[CheckResult]

    @property
    def failures(self) -> int:
        return sum(len(r.failures) for r in self.results)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def environment(self) -> str:
        return f"volform {__version__}; python {platform.python_version()}"

    def render(self) -> str:
        cfg = self.config
        if cfg.fmt == "json":
            return json.dumps(self.as_dict(), indent=2, sort_keys=True) + "\n"
        lines = [FORMAT_VERSION,
                 f"# {self.environment()}",
                 f"# seed={cfg.seed} deg-cap={cfg.deg_cap} freq-cap={cfg.freq_cap} "
                 f"n={cfg.n if cfg.n is not None else 'default'} ring={cfg.ring or 'default'} scale={cfg.scale}",
                 "suite\tcheck\tinstances\tfailures" + ("\tseconds" if cfg.timings else "")]
        for r in self.results:
            row = f"{r.suite}\t{r.name}\t{r.instances}\t{len(r.failures)}"
            if cfg.timings:
                row += f"\t{r.seconds:.2f}"
            lines.append(row)
        for r in self.results:
            for p in r.failures:
                lines.append(f"failure\t{r.suite}\t{r.name}\t{p}")
        lines.append(f"total\t{len(self.results)} checks\t{sum(r.instances for r in self.results)}\t{self.failures}")
        lines.append("status: " + ("ok" if self.ok else "FAILED"))
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        cfg = self.config
        out = {
            "format-version": 1,
            "environment": self.environment(),
            "config": {"seed": cfg.seed, "deg_cap": cfg.deg_cap, "freq_cap": cfg.freq_cap,
                       "n": cfg.n, "ring": cfg.ring, "scale": str(cfg.scale)},
            "checks": [],
            "failures": self.failures,
            "status": "ok" if self.ok else "failed",
        }
        for r in self.results:
            item = {"suite": r.suite, "check": r.name, "instances": r.instances,
                    "failures": r.failures}
            if cfg.timings:
                item["seconds"] = round(r.seconds, 2)
            out["checks"].append(item)
        return out


def run_suite(config: RunConfig) -> Report:
    names = config.suites or list(SUITES)
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise ValueError(f"unknown suite(s): {', '.join(unknown)}")
    results: List[CheckResult] = []
    for name in SUITES:  # fixed order regardless of the order requested
        if name in names:
            checker = _Checker(name, config)
            SUITES[name](checker)
            results.extend(checker.results)
    return Report(config, results)
