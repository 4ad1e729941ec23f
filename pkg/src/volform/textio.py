"""Text and JSON encodings of scalars, coefficients, forms and multivectors.

Expression grammar (coordinates and basis elements are 1-based)::

    expr    := wedge (('+' | '-') wedge)*
    wedge   := product ('^' product)*
    product := unary (('*' | '/' | <juxtaposition>) unary)*
    unary   := '-' unary | atom
    atom    := INT | 'i' | x<j>['^' INT] | e[k1,..,kn] | dx<j> | dx[i,..]
             | e<j> | e[i,..] (vector basis, vec context) | NAME '(' args ')' | '(' expr ')'

In the trig ring ``e[k1,..,kn]`` (n entries) is a Fourier mode; ``e<j>`` is the
coordinate vector field d_j.  Printed values re-parse to equal objects.

Block grammar (files):  ``2-form{ x1 dx[1,3] ; 1/2 dx[2,3] }`` and
``2-vec{ x2 e[1,2] }``; the last ``dx[..]`` / ``e[..]`` token of each term is the
basis element, everything before it is the coefficient.
"""
from __future__ import annotations

import json
import re
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional

from .forms import Form, MultiVec, _Alternating, basis_form, basis_vec, wedge
from .scalars import (GaussianRational, Poly, Trig, format_fraction, format_gaussian,
                      make_ring, poly_ring, trig_ring)

FORMAT_VERSION = "format-version: 1"


class ParseError(ValueError):
    def __init__(self, msg: str, pos: int = -1, text: str = ""):
        self.pos = pos
        where = f" at position {pos}" if pos >= 0 else ""
        super().__init__(f"{msg}{where}" + (f": {text!r}" if text else ""))


class SemanticError(ValueError):
    def __init__(self, op: str, msg: str):
        self.op = op
        super().__init__(f"{op}: {msg}")


# --------------------------------------------------------------------------
# formatting

def format_scalar(c) -> str:
    if isinstance(c, GaussianRational):
        return format_gaussian(c)
    return format_fraction(Fraction(c))


def _monomial(e) -> str:
    parts = []
    for j, a in enumerate(e):
        if a == 1:
            parts.append(f"x{j + 1}")
        elif a:
            parts.append(f"x{j + 1}^{a}")
    return " ".join(parts)


def _join(parts: List[str]) -> str:
    if not parts:
        return "0"
    out = parts[0]
    for p in parts[1:]:
        out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
    return out


def _term(c: str, basis: str) -> str:
    if not basis:
        return c
    if c == "1":
        return basis
    if c == "-1":
        return "-" + basis
    return f"{c} {basis}"


def format_poly(f: Poly) -> str:
    return _join([_term(format_fraction(c), _monomial(e)) for e, c in f.sorted_items()])


def format_trig(f: Trig) -> str:
    parts = []
    for k, c in f.sorted_items():
        basis = "" if not any(k) else "e[" + ",".join(str(a) for a in k) + "]"
        parts.append(_term(format_gaussian(c), basis))
    return _join(parts)


def format_coeff(f) -> str:
    if isinstance(f, Poly):
        return format_poly(f)
    if isinstance(f, Trig):
        return format_trig(f)
    return format_scalar(f)


def _basis_name(A: _Alternating, idx) -> str:
    pre = "dx" if isinstance(A, Form) else "e"
    return "^".join(f"{pre}{i + 1}" for i in idx)


def format_alternating(A: _Alternating) -> str:
    """Expression-style printing, e.g. ``-1 dx3`` or ``(x1 + x2) dx1^dx2``."""
    parts = []
    for idx in sorted(A.terms, key=lambda I: (len(I), I)):
        c = A.terms[idx]
        basis = _basis_name(A, idx)
        cs = format_coeff(c)
        if len(c.terms) > 1:
            cs = f"({cs})"
        parts.append(cs if not basis else f"{cs} {basis}")
    return _join(parts)


def format_value(v) -> str:
    if isinstance(v, _Alternating):
        return format_alternating(v)
    if isinstance(v, (Poly, Trig)):
        return format_coeff(v)
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(format_value(x) for x in v) + "]"
    return format_scalar(v)


def format_block(A: _Alternating) -> str:
    """File grammar: ``k-form{ coeff dx[i,j] ; ... }``."""
    tag = "form" if isinstance(A, Form) else "vec"
    pre = "dx" if isinstance(A, Form) else "e"
    items = []
    for idx in sorted(A.terms):
        c = format_coeff(A.terms[idx])
        items.append(f"({c}) {pre}[{','.join(str(i + 1) for i in idx)}]")
    return f"{A.degree}-{tag}{{ " + " ; ".join(items) + " }"


# --------------------------------------------------------------------------
# JSON mirror

def to_json(A: _Alternating) -> Dict[str, Any]:
    return {
        "dim": A.n,
        "ring": A.ring.kind,
        "degree": A.degree,
        "kind": A.kind,
        "terms": [{"indices": [i + 1 for i in idx], "coeff": format_coeff(A.terms[idx])}
                  for idx in sorted(A.terms)],
    }


def from_json(obj) -> _Alternating:
    if isinstance(obj, str):
        obj = json.loads(obj)
    ring = make_ring(obj["ring"], int(obj["dim"]))
    cls = Form if obj["kind"] == "form" else MultiVec
    out = cls(ring, int(obj["degree"]), {})
    for t in obj["terms"]:
        c = parse_expr(str(t["coeff"]), ring)
        c = _as_coeff(c, ring, "json")
        idx = [int(i) - 1 for i in t["indices"]]
        b = (basis_form if cls is Form else basis_vec)(ring, idx, c)
        out = out + b
    return out


# --------------------------------------------------------------------------
# tokenizer and parser

_TOKEN = re.compile(r"""
    (?P<ws>\s+)
  | (?P<dxlist>dx\[\s*[0-9,\s]*\])
  | (?P<dx>dx[0-9]+)
  | (?P<elist>e\[\s*-?[0-9,\s-]*\])
  | (?P<evec>e[0-9]+)
  | (?P<var>x[0-9]+)
  | (?P<int>[0-9]+)
  | (?P<name>[A-Za-z_][A-Za-z_0-9]*)
  | (?P<op>[-+*/^(),;=@])
""", re.VERBOSE)


def tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos]!r}", pos, text)
        kind = m.lastgroup
        if kind != "ws":
            out.append((kind, m.group(), pos))
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


def _index_list(tok: str) -> List[int]:
    inner = tok[tok.index("[") + 1:-1]
    return [int(s) for s in inner.split(",") if s.strip()]


def _as_coeff(v, ring, op):
    if isinstance(v, (Poly, Trig)):
        if v.ring != ring:
            raise SemanticError(op, "ring mismatch")
        return v
    if isinstance(v, (int, Fraction, GaussianRational)):
        return ring.const(v)
    if isinstance(v, _Alternating) and v.degree == 0:
        return v[()]
    raise SemanticError(op, f"expected a function, got {type(v).__name__}")


def _is_scalar(v):
    return isinstance(v, (int, Fraction, GaussianRational))


def _kind(v):
    if isinstance(v, _Alternating):
        return v.kind
    return "coeff"


def add_values(a, b, ring, op="+"):
    if isinstance(a, _Alternating) or isinstance(b, _Alternating):
        if _is_zero_scalar(a):
            return b
        if _is_zero_scalar(b):
            return a
        if not (isinstance(a, _Alternating) and isinstance(b, _Alternating)):
            x = a if isinstance(a, _Alternating) else b
            if x.degree != 0:
                raise SemanticError(op, "cannot add a function to a form of positive degree")
            f = b if x is a else a
            return x + type(x)(ring, 0, {(): _as_coeff(f, ring, op)})
        try:
            return a + b
        except ValueError as exc:
            raise SemanticError(op, str(exc)) from None
    if _is_scalar(a) and _is_scalar(b):
        if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
            return GaussianRational.coerce(a) + b
        return Fraction(a) + Fraction(b)
    return _as_coeff(a, ring, op) + _as_coeff(b, ring, op)


def _is_zero_scalar(v):
    return _is_scalar(v) and not v


def mul_values(a, b, ring, op="*"):
    if isinstance(a, _Alternating) and isinstance(b, _Alternating):
        if a.degree == 0:
            return b.scale(a[()])
        if b.degree == 0:
            return a.scale(b[()])
        return wedge_values(a, b, ring, op)
    if isinstance(a, _Alternating):
        return a.scale(_as_coeff(b, ring, op) if not _is_scalar(b) else b)
    if isinstance(b, _Alternating):
        return b.scale(_as_coeff(a, ring, op) if not _is_scalar(a) else a)
    if _is_scalar(a) and _is_scalar(b):
        if isinstance(a, GaussianRational) or isinstance(b, GaussianRational):
            return GaussianRational.coerce(a) * b
        return Fraction(a) * Fraction(b)
    return _as_coeff(a, ring, op) * _as_coeff(b, ring, op)


def wedge_values(a, b, ring, op="^"):
    if not isinstance(a, _Alternating) or not isinstance(b, _Alternating):
        return mul_values(a, b, ring, op)
    try:
        return wedge(a, b)
    except ValueError as exc:
        raise SemanticError(op, str(exc)) from None


class _Parser:
    def __init__(self, text: str, ring, functions: Dict[str, Callable]):
        self.text = text
        self.toks = tokenize(text)
        self.i = 0
        self.ring = ring
        self.functions = functions or {}

    def peek(self, off=0):
        return self.toks[min(self.i + off, len(self.toks) - 1)]

    def take(self, value=None):
        tok = self.toks[self.i]
        if value is not None and tok[1] != value:
            raise ParseError(f"expected {value!r}, found {tok[1] or 'end of input'!r}", tok[2], self.text)
        self.i += 1
        return tok

    def parse(self):
        v = self.expr()
        if self.peek()[0] != "end":
            tok = self.peek()
            raise ParseError(f"unexpected token {tok[1]!r}", tok[2], self.text)
        return v

    def expr(self):
        if self.peek()[1] in ("+",):
            self.take()
        v = self.wedge()
        while self.peek()[1] in ("+", "-"):
            op = self.take()[1]
            rhs = self.wedge()
            if op == "-":
                rhs = mul_values(-1, rhs, self.ring, "-")
            v = add_values(v, rhs, self.ring)
        return v

    def wedge(self):
        v = self.product()
        while self.peek()[1] == "^":
            self.take()
            v = wedge_values(v, self.product(), self.ring)
        return v

    def _starts_atom(self, tok):
        return tok[0] in ("dxlist", "dx", "elist", "evec", "var", "int", "name") or tok[1] == "("

    def product(self):
        v = self.unary()
        while True:
            tok = self.peek()
            if tok[1] == "*":
                self.take()
                v = mul_values(v, self.unary(), self.ring)
            elif tok[1] == "/":
                self.take()
                den = self.unary()
                if not _is_scalar(den) or not den:
                    raise ParseError("division only by a nonzero scalar", tok[2], self.text)
                inv = (GaussianRational(1) / den) if isinstance(den, GaussianRational) else Fraction(1, 1) / Fraction(den)
                v = mul_values(v, inv, self.ring)
            elif self._starts_atom(tok):
                v = mul_values(v, self.unary(), self.ring)
            else:
                return v

    def unary(self):
        if self.peek()[1] == "-":
            self.take()
            return mul_values(-1, self.unary(), self.ring)
        return self.atom()

    def atom(self):
        kind, val, pos = self.take()
        ring = self.ring
        if kind == "int":
            return Fraction(int(val))
        if kind == "var":
            j = int(val[1:]) - 1
            self._need_ring(pos)
            if ring.kind != "poly":
                raise SemanticError("parse", f"coordinate {val} is not a function on the torus")
            if not 0 <= j < ring.n:
                raise ParseError(f"coordinate {val} out of range", pos, self.text)
            v = ring.var(j)
            if self.peek()[1] == "^" and self.peek(1)[0] == "int":
                self.take()
                v = ring.monomial([int(self.take()[1]) if t == j else 0 for t in range(ring.n)])
            return v
        if kind in ("dx", "dxlist"):
            self._need_ring(pos)
            idx = [int(val[2:]) - 1] if kind == "dx" else [i - 1 for i in _index_list(val)]
            self._check_idx(idx, pos)
            return basis_form(ring, idx)
        if kind == "evec":
            self._need_ring(pos)
            idx = [int(val[1:]) - 1]
            self._check_idx(idx, pos)
            return basis_vec(ring, idx)
        if kind == "elist":
            self._need_ring(pos)
            ks = _index_list(val)
            if ring.kind == "trig" and len(ks) == ring.n:
                return ring.mode(ks)
            idx = [i - 1 for i in ks]
            self._check_idx(idx, pos)
            return basis_vec(ring, idx)
        if kind == "name":
            if val == "i" and self.peek()[1] != "(":
                return GaussianRational(0, 1)
            if self.peek()[1] != "(":
                raise ParseError(f"unknown identifier {val!r}", pos, self.text)
            return self.call(val, pos)
        if val == "(":
            v = self.expr()
            self.take(")")
            return v
        raise ParseError(f"unexpected token {val or 'end of input'!r}", pos, self.text)

    def call(self, name, pos):
        fn = self.functions.get(name)
        if fn is None:
            raise ParseError(f"unknown function {name!r}", pos, self.text)
        self.take("(")
        args = []
        if self.peek()[1] != ")":
            args.append(self.expr())
            while self.peek()[1] in (",", ";"):
                self.take()
                args.append(self.expr())
        self.take(")")
        try:
            return fn(self.ring, *args)
        except SemanticError:
            raise
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise SemanticError(name, str(exc)) from None

    def _need_ring(self, pos):
        if self.ring is None:
            raise ParseError("no ring context (use '@ poly n=3')", pos, self.text)

    def _check_idx(self, idx, pos):
        if any(not 0 <= i < self.ring.n for i in idx):
            raise ParseError(f"basis index out of range for n={self.ring.n}", pos, self.text)


_CONTEXT = re.compile(r"@\s*(poly|trig)\s+n\s*=\s*([0-9]+)\s*$")


def split_context(text: str):
    """Split a trailing ``@ poly n=3`` clause off an expression."""
    m = _CONTEXT.search(text)
    if not m:
        return text, None
    return text[:m.start()], (m.group(1), int(m.group(2)))


def parse_expr(text: str, ring=None, functions: Optional[Dict[str, Callable]] = None):
    body, ctx = split_context(text)
    if ctx is not None:
        ring = make_ring(*ctx)
    return _Parser(body, ring, functions).parse()


_BLOCK = re.compile(r"^\s*([0-9]+)-(form|vec)\s*\{(.*)\}\s*$", re.S)
_LAST_DX = re.compile(r"dx\[\s*[0-9,\s]*\]\s*$")
_LAST_E = re.compile(r"e\[\s*[0-9,\s]*\]\s*$")


def parse_object(text: str, ring):
    """Parse a form/multivector given in block or expression syntax."""
    lines = [ln for ln in text.splitlines() if not ln.strip().startswith("format-version")]
    text = "\n".join(lines).strip()
    if text.startswith("{"):
        return from_json(text)
    m = _BLOCK.match(text)
    if not m:
        return parse_expr(text, ring)
    k, tag, body = int(m.group(1)), m.group(2), m.group(3)
    cls = Form if tag == "form" else MultiVec
    out = cls(ring, k, {})
    for item in body.split(";"):
        item = item.strip()
        if not item:
            continue
        mm = (_LAST_DX if tag == "form" else _LAST_E).search(item)
        if not mm:
            raise ParseError("term lacks a basis element", text.find(item), item)
        idx = [i - 1 for i in _index_list(mm.group().strip())]
        if len(idx) != k:
            raise ParseError(f"basis element has {len(idx)} indices, expected {k}", text.find(item), item)
        ctext = item[:mm.start()].strip()
        c = _as_coeff(parse_expr(ctext, ring) if ctext else Fraction(1), ring, "parse")
        out = out + (basis_form if cls is Form else basis_vec)(ring, idx, c)
    return out


def coerce_form(v, ring, degree: int) -> Form:
    """Interpret a parsed value as a Form of the given degree."""
    if isinstance(v, Form):
        if v.degree != degree:
            raise SemanticError("coerce", f"expected a {degree}-form, got degree {v.degree}")
        return v
    if isinstance(v, MultiVec):
        raise SemanticError("coerce", "expected a form, got a multivector")
    if degree == 0:
        return Form(ring, 0, {(): _as_coeff(v, ring, "coerce")})
    if _is_zero_scalar(v):
        return Form(ring, degree, {})
    raise SemanticError("coerce", f"expected a {degree}-form")


def coerce_vec(v, ring, degree: int) -> MultiVec:
    if isinstance(v, MultiVec):
        if v.degree != degree:
            raise SemanticError("coerce", f"expected a {degree}-vector, got degree {v.degree}")
        return v
    if isinstance(v, Form):
        raise SemanticError("coerce", "expected a multivector, got a form")
    if degree == 0:
        return MultiVec(ring, 0, {(): _as_coeff(v, ring, "coerce")})
    if _is_zero_scalar(v):
        return MultiVec(ring, degree, {})
    raise SemanticError("coerce", f"expected a {degree}-vector")


def values_equal(a, b) -> bool:
    """Equality that identifies zero objects of any degree with the scalar 0."""
    if isinstance(a, _Alternating) and isinstance(b, _Alternating):
        return a == b
    for x, y in ((a, b), (b, a)):
        if isinstance(x, _Alternating):
            if _is_scalar(y):
                return (not x and not y) or (x.degree == 0 and x[()] == x.ring.const(y))
            if isinstance(y, (Poly, Trig)):
                return x.degree == 0 and x[()] == y
    if isinstance(a, (Poly, Trig)) and _is_scalar(b):
        return a == a.ring.const(b)
    if isinstance(b, (Poly, Trig)) and _is_scalar(a):
        return b == b.ring.const(a)
    if isinstance(a, (list, tuple)) and isinstance(b, (list, tuple)):
        return len(a) == len(b) and all(values_equal(x, y) for x, y in zip(a, b))
    return a == b


__all__ = [
    "FORMAT_VERSION", "ParseError", "SemanticError", "format_value", "format_block",
    "format_alternating", "format_coeff", "format_poly", "format_trig", "parse_expr",
    "parse_object", "to_json", "from_json", "coerce_form", "coerce_vec", "values_equal",
    "poly_ring", "trig_ring",
]
