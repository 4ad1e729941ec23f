"""``volform`` command-line tool.

Exit codes: 0 success, 1 a verification failed, 2 malformed input or config.
Every textual output starts with a ``format-version`` header line.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Callable, Dict, List, Optional

from . import cohomology as co
from . import decompose as dec
from . import graded as gr
from . import ophom as oh
from . import torus as tor
from .forms import (DegreeError, Form, MultiVec, _Alternating, d, delta, divergence, flat,
                    hamiltonian_field, iota, leibniz_bracket, lie_bracket, lie_derivative,
                    lie_derivative_vec, sharp)
from .scalars import GaussianRational, RingError, make_ring
from .suites import SUITES, RunConfig, run_suite
from .textio import (FORMAT_VERSION, ParseError, SemanticError, coerce_form, coerce_vec,
                     format_alternating, format_scalar, format_value, parse_expr, parse_object)


class UsageError(ValueError):
    pass


# -- expression evaluation ---------------------------------------------------

class Witness:
    """A decomposition printed as a sum of brackets; re-parses to its target."""

    def __init__(self, pairs):
        self.pairs = pairs

    def __str__(self):
        return " + ".join(f"bracket({format_alternating(a)}, {format_alternating(b)})"
                          for a, b in self.pairs) or "0"


def _as_form(ring, v, op: str, degree: Optional[int] = None) -> Form:
    if isinstance(v, Form):
        if degree is not None and v.degree != degree:
            raise SemanticError(op, f"expected a {degree}-form, got degree {v.degree}")
        return v
    if isinstance(v, MultiVec):
        raise SemanticError(op, "expected a form, got a multivector")
    return coerce_form(v, ring, 0 if degree is None else degree)


def _as_vec(ring, v, op: str, degree: Optional[int] = None) -> MultiVec:
    if isinstance(v, MultiVec):
        if degree is not None and v.degree != degree:
            raise SemanticError(op, f"expected a {degree}-vector, got degree {v.degree}")
        return v
    if isinstance(v, Form):
        raise SemanticError(op, "expected a multivector, got a form")
    return coerce_vec(v, ring, 0 if degree is None else degree)


def _int_arg(v, op: str) -> int:
    if isinstance(v, Fraction) and v.denominator == 1:
        return int(v)
    if isinstance(v, int):
        return v
    raise SemanticError(op, "expected an integer axis")


def _bracket(ring, a, b):
    if isinstance(a, MultiVec) or isinstance(b, MultiVec):
        return lie_bracket(_as_vec(ring, a, "bracket", 1), _as_vec(ring, b, "bracket", 1))
    n = ring.n
    return leibniz_bracket(_as_form(ring, a, "bracket", n - 2), _as_form(ring, b, "bracket", n - 2))


def _lie(ring, X, w):
    X = _as_vec(ring, X, "lie", 1)
    if isinstance(w, MultiVec):
        return lie_derivative_vec(X, w)
    return lie_derivative(X, _as_form(ring, w, "lie"))


def _decompose(ring, B):
    if isinstance(B, Form) and B.degree == ring.n - 3:
        w = dec.square_decompose(B)
        return Witness([(p.alpha, p.alpha) for p in w.potentials])
    if isinstance(B, Form):
        B = _as_form(ring, B, "decompose", ring.n - 2)
    else:
        B = _as_vec(ring, B, "decompose", 2)
    return Witness(dec.commutator_decompose(B).pairs)


def _cocycle(ring, i, j, X, Y):
    fixed = (_int_arg(i, "cocycle") - 1, _int_arg(j, "cocycle") - 1)
    return tor.cycle_cocycle(fixed, _as_vec(ring, X, "cocycle", 1), _as_vec(ring, Y, "cocycle", 1))


def _lich(ring, sigma, X, Y):
    return tor.lichnerowicz(_as_form(ring, sigma, "lich", 2), _as_vec(ring, X, "lich", 1),
                            _as_vec(ring, Y, "lich", 1))


def _normal(ring, a):
    return tor.normal_form(_as_form(ring, a, "normal", ring.n - 2)).rep


FUNCTIONS: Dict[str, Callable] = {
    "bracket": _bracket,
    "d": lambda R, w: d(_as_form(R, w, "d")),
    "delta": lambda R, A: delta(_as_vec(R, A, "delta")),
    "iota": lambda R, X, w: iota(_as_vec(R, X, "iota"), _as_form(R, w, "iota")),
    "flat": lambda R, A: flat(_as_vec(R, A, "flat")),
    "sharp": lambda R, w: sharp(_as_form(R, w, "sharp")),
    "Xfield": lambda R, a: hamiltonian_field(_as_form(R, a, "Xfield", R.n - 2)),
    "div": lambda R, X: divergence(_as_vec(R, X, "div", 1)),
    "lie": _lie,
    "decompose": _decompose,
    "cocycle": _cocycle,
    "lich": _lich,
    "potential": lambda R, X: tor.potential(_as_vec(R, X, "potential", 1)),
    "normal": _normal,
    "cbracket": lambda R, a, b: tor.central_bracket(
        tor.normal_form(_as_form(R, a, "cbracket", R.n - 2)),
        tor.normal_form(_as_form(R, b, "cbracket", R.n - 2))).rep,
}


def format_result(v) -> str:
    if isinstance(v, Witness):
        return str(v)
    if isinstance(v, GaussianRational):
        return format_scalar(v)
    return format_value(v)


def eval_expr(expr: str, ring_kind: str = "poly", n: int = 3) -> str:
    """Evaluate an expression; a trailing ``@ poly n=3`` overrides the default ring."""
    ring = make_ring(ring_kind, n)
    return format_result(parse_expr(expr, ring, FUNCTIONS))


# -- subcommands ----------------------------------------------------------------

def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path) as fh:
        return fh.read()


def _emit(text: str):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_eval(args) -> int:
    _emit(FORMAT_VERSION + "\n" + eval_expr(" ".join(args.expr), args.ring, args.n))
    return 0


def cmd_cartan(args) -> int:
    ring = make_ring(args.ring, args.n)
    values = [parse_object(a, ring) for a in args.args]
    fn = FUNCTIONS.get(args.op)
    try:
        out = fn(ring, *values)
    except TypeError:
        raise UsageError(f"wrong number of arguments for {args.op}") from None
    _emit(FORMAT_VERSION + "\n" + format_result(out))
    return 0


def cmd_decompose(args) -> int:
    ring = make_ring("poly", args.n)
    obj = parse_object(_read(args.input), ring)
    if args.kind == "brackets":
        if isinstance(obj, MultiVec):
            target = _as_vec(ring, obj, "decompose", 2)
        else:
            target = _as_form(ring, obj, "decompose", ring.n - 2)
        w = dec.commutator_decompose(target)
    else:
        w = dec.square_decompose(_as_form(ring, obj, "decompose", ring.n - 3))
    out = dec.witness_json(w)
    out = {"format-version": 1, **out}
    _emit(json.dumps(out, indent=2, sort_keys=True))
    return 0 if out["verified"] else 1


def cmd_rep(args) -> int:
    rows = gr.rep_table(args.n, args.kmax)
    lines = [FORMAT_VERSION, "n\tk\tdim\tformula\tgrading\tintertwiner_dim\tendo_dim"]
    for r in rows:
        cells = [r["n"], r["k"], r["dim"], r["formula"], str(r["grading"]).lower(),
                 "-" if r["intertwiner"] is None else r["intertwiner"],
                 "-" if r["endo"] is None else r["endo"]]
        lines.append("\t".join(str(c) for c in cells))
    ok = all(r["dim"] == r["formula"] and r["grading"] for r in rows)
    _emit("\n".join(lines))
    return 0 if ok else 1


def cmd_coho(args) -> int:
    alg = co.parse_algebra(args.algebra)
    mod = co.parse_module(args.module, alg)
    lines = [FORMAT_VERSION, f"algebra\t{args.algebra}\tdim={alg.dim}\tkind={alg.kind}",
             f"module\t{mod.name}\tdim={mod.dim}"]
    if alg.window is not None and alg.kind == "truncated":
        lines.append(f"window\tdegrees 0..{alg.window}; brackets above degree {alg.window} dropped")
        lines.append(f"jacobi-on-window\t{str(not alg.identity_failures(alg.window_triples())).lower()}")
    h = co.h_dim(alg, mod, args.q, complex=args.complex)
    lines.append(f"H^{args.q}\t" + ("undefined (Jacobi fails outside the window)" if h is None else str(h)))
    _emit("\n".join(lines))
    return 0


def cmd_torus(args) -> int:
    if args.action == "pairing":
        M = tor.pairing_matrix(args.n)
        cols = ["class"] + [f"C{i + 1},{j + 1}" for i, j in tor.cycles(args.n)]
        lines = [FORMAT_VERSION, "\t".join(cols)]
        for b, row in zip(tor.center_basis(args.n), M):
            lines.append("\t".join([format_alternating(b)] + [format_scalar(v) for v in row]))
        lines.append(f"rank\t{tor.pairing_rank(args.n)}")
        _emit("\n".join(lines))
        return 0
    ring = make_ring("trig", args.n)
    X = _as_vec(ring, parse_object(args.X, ring), "torus", 1)
    Y = _as_vec(ring, parse_object(args.Y, ring), "torus", 1)
    if args.cycle:
        i, j = (int(t) - 1 for t in args.cycle.split(","))
        value = tor.cycle_cocycle((i, j), X, Y)
    else:
        sigma = _as_form(ring, parse_object(args.sigma, ring), "torus", 2)
        value = tor.lichnerowicz(sigma, X, Y)
    _emit(FORMAT_VERSION + "\n" + format_scalar(value))
    return 0


def cmd_ophom(args) -> int:
    D = oh.from_json(_read(args.input))
    fac = oh.factor_through_d(D)
    out = {
        "format-version": 1,
        "Q": oh.to_json(fac.Q),
        "transcript": [{"l": s.l, "property1": s.property1, "property2": s.property2}
                       for s in fac.stages],
        "verified": fac.verified,
    }
    _emit(json.dumps(out, indent=2, sort_keys=True))
    return 0 if fac.ok else 1


def _scale(text: str) -> Fraction:
    try:
        v = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad --scale {text!r}") from None
    if v <= 0:
        raise UsageError("--scale must be positive")
    return v


def cmd_verify(args) -> int:
    suites: Optional[List[str]] = None
    if args.suite:
        suites = [s for item in args.suite for s in item.split(",") if s]
        unknown = [s for s in suites if s not in SUITES]
        if unknown:
            raise UsageError(f"unknown suite(s): {', '.join(unknown)}; known: {', '.join(SUITES)}")
    if args.n is not None and args.n < 3:
        raise UsageError("--n must be at least 3")
    if args.deg_cap < 0 or args.freq_cap < 0:
        raise UsageError("caps must be non-negative")
    config = RunConfig(seed=args.seed, n=args.n, deg_cap=args.deg_cap, freq_cap=args.freq_cap,
                       scale=_scale(args.scale), suites=suites, fmt=args.format,
                       timings=args.timings, ring=args.ring)
    report = run_suite(config)
    sys.stdout.write(report.render())
    return 0 if report.ok else 1


# -- argument parsing -------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="volform", description="Exact volume-form Cartan calculus and its algebra.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def ring_opts(q, n_default=3):
        q.add_argument("--ring", choices=["poly", "trig"], default="poly")
        q.add_argument("--n", type=int, default=n_default)

    q = sub.add_parser("eval", help="evaluate an expression")
    q.add_argument("expr", nargs="+")
    ring_opts(q)
    q.set_defaults(func=cmd_eval)

    q = sub.add_parser("cartan", help="apply one Cartan-calculus operation")
    q.add_argument("op", choices=sorted(FUNCTIONS))
    q.add_argument("args", nargs="*", help="forms or multivectors in expression or block syntax")
    ring_opts(q)
    q.set_defaults(func=cmd_cartan)

    q = sub.add_parser("decompose", help="emit a JSON witness")
    q.add_argument("kind", choices=["brackets", "squares"])
    q.add_argument("--input", default="-")
    q.add_argument("--n", type=int, default=3)
    q.set_defaults(func=cmd_decompose)

    q = sub.add_parser("rep", help="representation dimension table")
    q.add_argument("action", choices=["table"])
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--kmax", type=int, default=3)
    q.set_defaults(func=cmd_rep)

    q = sub.add_parser("coho", help="cohomology of a finite-dimensional algebra")
    q.add_argument("--algebra", required=True)
    q.add_argument("--module", default="trivial")
    q.add_argument("--q", type=int, default=2)
    q.add_argument("--complex", choices=["ce", "loday"], default="ce")
    q.set_defaults(func=cmd_coho)

    q = sub.add_parser("torus", help="central extension on the torus")
    q.add_argument("action", choices=["cocycle", "pairing"])
    q.add_argument("--n", type=int, default=3)
    q.add_argument("--sigma", default="dx1^dx2")
    q.add_argument("--cycle", help="fixed axes 'i,j' for the cycle cocycle instead of --sigma")
    q.add_argument("--X")
    q.add_argument("--Y")
    q.set_defaults(func=cmd_torus)

    q = sub.add_parser("ophom", help="factor an operator through d")
    q.add_argument("action", choices=["factor"])
    q.add_argument("--input", default="-")
    q.set_defaults(func=cmd_ophom)

    q = sub.add_parser("verify", help="run the invariant battery")
    q.add_argument("--seed", type=int, default=1)
    q.add_argument("--n", type=int)
    q.add_argument("--ring", choices=["poly", "trig"])
    q.add_argument("--deg-cap", type=int, default=3)
    q.add_argument("--freq-cap", type=int, default=2)
    q.add_argument("--scale", default="1", help="multiply instance counts (rational)")
    q.add_argument("--suite", action="append", help=f"one or more of {','.join(SUITES)}")
    q.add_argument("--format", choices=["tsv", "json"], default="tsv")
    q.add_argument("--timings", action="store_true", help="add wall times (breaks byte-identity)")
    q.set_defaults(func=cmd_verify)
    return p


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if getattr(args, "action", None) == "cocycle" and (args.X is None or args.Y is None):
            raise UsageError("torus cocycle needs --X and --Y")
        return args.func(args)
    except (UsageError, ParseError, SemanticError, DegreeError, RingError,
            co.AlgebraError, tor.TorusError, oh.OperatorError, dec.DecompositionError,
            json.JSONDecodeError, OSError, ValueError) as exc:
        sys.stderr.write(f"volform: error: {exc}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
