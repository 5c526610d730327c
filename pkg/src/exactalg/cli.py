"""Batch front end for a small declarative language.

A program is a sequence of ``;``-terminated statements::

    ring Q x,y;
    order lex;
    ideal I = x^2 - y, x*y - 1;
    gb I;

Declarations (``ring``, ``order``, ``ideal``, ``matrix``, ``cone``,
``circuit``) are resolved while parsing, so undeclared names and malformed
polynomials are reported with a line and column before anything runs.
Commands take comma-separated arguments; generator, blade and vector indices
are 1-based.
"""

from __future__ import annotations

import argparse
import bisect
import io
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import clifford_hopf as ch
from . import estimator as est
from . import groebner as gbm
from . import ideal_ops as io_ops
from . import poly as pm
from . import skew_twist as sk
from . import toric as tr
from .errors import AlgebraError, ParseError


# ---------------------------------------------------------------------------
# Source positions
# ---------------------------------------------------------------------------


class _Source:
    def __init__(self, text: str):
        self.text = text
        self.starts = [0] + [m.end() for m in re.finditer("\n", text)]

    def loc(self, pos: int) -> tuple:
        line = bisect.bisect_right(self.starts, pos) - 1
        return line + 1, pos - self.starts[line] + 1

    def error(self, msg: str, pos: int) -> ParseError:
        line, col = self.loc(pos)
        return ParseError(msg, line=line, col=col)


@dataclass(frozen=True)
class _Span:
    """A slice of the program text, remembered with its absolute offset."""

    text: str
    pos: int

    def strip(self) -> "_Span":
        lead = len(self.text) - len(self.text.lstrip())
        return _Span(self.text.strip(), self.pos + lead)

    def __bool__(self):
        return bool(self.text.strip())


_OPEN, _CLOSE = "([{", ")]}"


def _split_top(span: _Span, sep: str, src: _Source) -> list:
    """Split at ``sep`` outside brackets; checks bracket balance."""
    parts, start, stack = [], 0, []
    for k, ch_ in enumerate(span.text):
        if ch_ in _OPEN:
            stack.append((ch_, k))
        elif ch_ in _CLOSE:
            if not stack or _OPEN.index(stack[-1][0]) != _CLOSE.index(ch_):
                raise src.error(f"unbalanced {ch_!r}", span.pos + k)
            stack.pop()
        elif ch_ == sep and not stack:
            parts.append(_Span(span.text[start:k], span.pos + start))
            start = k + 1
    if stack:
        raise src.error(f"unclosed {stack[-1][0]!r}", span.pos + stack[-1][1])
    parts.append(_Span(span.text[start:], span.pos + start))
    return parts


def _strip_comments(text: str) -> str:
    # blank out comments so offsets stay valid
    return re.sub(r"#[^\n]*", lambda m: " " * len(m.group()), text)


# ---------------------------------------------------------------------------
# Program model
# ---------------------------------------------------------------------------


@dataclass
class Statement:
    kind: str
    line: int
    col: int
    # bound action for commands; declarations carry their value for inspection
    action: Callable | None = field(default=None, repr=False)
    value: object = field(default=None, repr=False)


@dataclass
class Program:
    statements: list

    def __len__(self):
        return len(self.statements)


@dataclass
class _Env:
    ring: pm.PolyRing | None = None
    order: pm.MonomialOrder = pm.DEGREVLEX
    ideals: dict = field(default_factory=dict)
    matrices: dict = field(default_factory=dict)
    cones: dict = field(default_factory=dict)
    circuits: dict = field(default_factory=dict)


@dataclass
class RunConfig:
    seed: int = 0
    samples: int | None = None
    delta: Fraction = Fraction(1, 10)


_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")
_NUMBER = re.compile(r"\s*(-?\d+)(?:\s*/\s*(\d+))?\s*$")


class _Parser:
    def __init__(self, text: str):
        self.src = _Source(text)
        self.text = _strip_comments(text)
        self.env = _Env()

    # statement splitting -------------------------------------------------

    def statements(self):
        text, start, depth = self.text, 0, 0
        for k, c in enumerate(text):
            if c == "{":
                depth += 1
            elif c == "}":
                depth -= 1
                if depth < 0:
                    raise self.src.error("unbalanced '}'", k)
                # a closing block brace may end its statement without ';'
                if depth == 0 and not text[k + 1:].lstrip().startswith(";"):
                    yield _Span(text[start:k + 1], start).strip()
                    start = k + 1
            elif c == ";" and depth == 0:
                span = _Span(text[start:k], start).strip()
                if not span:
                    raise self.src.error("empty statement", k)
                yield span
                start = k + 1
        rest = _Span(text[start:], start).strip()
        if rest:
            raise self.src.error("missing ';' at end of statement", rest.pos + len(rest.text))
        if depth:
            raise self.src.error("unclosed '{'", len(text))

    def parse(self) -> Program:
        out = []
        for span in self.statements():
            m = re.match(r"[A-Za-z][A-Za-z0-9_-]*", span.text)
            if not m:
                raise self.src.error("expected a keyword", span.pos)
            kw = m.group()
            rest = _Span(span.text[m.end():], span.pos + m.end())
            line, col = self.src.loc(span.pos)
            if kw in _DECLS:
                value = _DECLS[kw](self, rest)
                out.append(Statement(kw, line, col, value=value))
            elif kw in COMMANDS:
                action = COMMANDS[kw].build(self, rest)
                out.append(Statement(kw, line, col, action=action))
            else:
                raise self.src.error(f"unknown statement {kw!r}", span.pos)
        return Program(out)

    # argument helpers ----------------------------------------------------

    def err(self, msg, span: _Span):
        return self.src.error(msg, span.pos)

    def args(self, span: _Span, lo: int, hi: int | None = None) -> list:
        hi = lo if hi is None else hi
        parts = [p.strip() for p in _split_top(span, ",", self.src)] if span else []
        if len(parts) == 1 and not parts[0]:
            parts = []
        if any(not p for p in parts):
            raise self.err("empty argument", span)
        if not lo <= len(parts) <= hi:
            want = str(lo) if lo == hi else (f"{lo} to {hi}" if hi < 99 else f"at least {lo}")
            raise self.err(f"expected {want} argument(s), got {len(parts)}", span.strip())
        return parts

    def ident(self, span: _Span) -> str:
        if not _IDENT.match(span.text):
            raise self.err(f"expected a name, found {span.text!r}", span)
        return span.text

    def lookup(self, table: str, span: _Span):
        name = self.ident(span)
        d = getattr(self.env, table)
        if name not in d:
            raise self.err(f"undeclared {table[:-1]} {name!r}", span)
        return d[name]

    def need_ring(self, span: _Span) -> pm.PolyRing:
        if self.env.ring is None:
            raise self.err("no ring declared", span)
        return self.env.ring

    def ideal(self, span: _Span) -> gbm.Ideal:
        ideal = self.lookup("ideals", span)
        if ideal.ring != self.env.ring:
            raise self.err(f"ideal {span.text!r} belongs to another ring", span)
        return ideal

    def poly(self, span: _Span) -> pm.Polynomial:
        ring = self.need_ring(span)
        try:
            return pm.parse_polynomial(span.text, ring)
        except ParseError as e:
            raise self.src.error(e.message, span.pos + (e.col or 0)) from None

    def integer(self, span: _Span) -> int:
        m = _NUMBER.match(span.text)
        if not m or m.group(2) is not None:
            raise self.err(f"expected an integer, found {span.text!r}", span)
        return int(m.group(1))

    def rational(self, span: _Span) -> Fraction:
        m = _NUMBER.match(span.text)
        if not m:
            raise self.err(f"expected a number, found {span.text!r}", span)
        if m.group(2) is not None and int(m.group(2)) == 0:
            raise self.err("zero denominator", span)
        return Fraction(int(m.group(1)), int(m.group(2) or 1))

    def literal(self, span: _Span):
        """Nested bracket list of rationals, e.g. ``[[1,0],[1/2,-1]]``."""
        t = span.text
        if t[:1] in "([" and t[-1:] in ")]":
            if _OPEN.index(t[0]) != _CLOSE.index(t[-1]):
                raise self.err("mismatched brackets", span)
            inner = _Span(t[1:-1], span.pos + 1)
            if not inner:
                return []
            return [self.literal(p.strip()) for p in _split_top(inner, ",", self.src)]
        return self.rational(span)

    def vector(self, span: _Span) -> list:
        v = self.literal(span)
        if not isinstance(v, list) or any(isinstance(x, list) for x in v):
            raise self.err("expected a flat list like [1,2]", span)
        return v

    def int_vector(self, span: _Span) -> list:
        v = self.vector(span)
        if any(x.denominator != 1 for x in v):
            raise self.err("expected integers", span)
        return [int(x) for x in v]

    def table(self, span: _Span) -> list:
        v = self.literal(span)
        if not isinstance(v, list) or any(not isinstance(r, list) for r in v):
            raise self.err("expected a list of lists like [[1,0],[0,1]]", span)
        if any(isinstance(x, list) for r in v for x in r):
            raise self.err("nesting too deep", span)
        return v

    def int_table(self, span: _Span) -> list:
        v = self.table(span)
        if any(x.denominator != 1 for r in v for x in r):
            raise self.err("expected integers", span)
        return [[int(x) for x in r] for r in v]

    def matrix(self, span: _Span) -> list:
        if span.text[:1] in "([":
            return self.table(span)
        return self.lookup("matrices", span)

    def cone(self, span: _Span) -> tr.Cone:
        if span.text[:1] in "([":
            rays = self.int_table(span)
            if not rays:
                raise self.err("a literal cone needs at least one ray", span)
            return _safe(lambda: tr.Cone(rays), self, span)

        return self.lookup("cones", span)

    def word(self, span: _Span) -> str:
        if not re.match(r"[A-Za-z0-9_-]+$", span.text):
            raise self.err(f"expected a word, found {span.text!r}", span)
        return span.text


def _safe(fn, parser, span):
    try:
        return fn()
    except (AlgebraError, ValueError) as e:
        raise parser.err(str(e), span) from None


# ---------------------------------------------------------------------------
# Declarations
# ---------------------------------------------------------------------------


def _decl_ring(p: _Parser, rest: _Span):
    rest = rest.strip()
    m = re.match(r"(Q|F(\d+))\s+", rest.text)
    if not m:
        raise p.err("expected 'ring Q <vars>' or 'ring F<p> <vars>'", rest)
    field_ = pm.QQ if m.group(1) == "Q" else None
    if field_ is None:
        prime = int(m.group(2))
        field_ = _safe(lambda: pm.PrimeField(prime), p, rest)
    names = [p.ident(s.strip()) for s in _split_top(_Span(rest.text[m.end():], rest.pos + m.end()), ",", p.src)]
    if len(set(names)) != len(names):
        raise p.err("duplicate variable name", rest)
    p.env.ring = pm.PolyRing.from_names(names, field_)
    return p.env.ring


def _decl_order(p: _Parser, rest: _Span):
    rest = rest.strip()
    text = rest.text
    if text in ("lex", "drl", "degrevlex", "grevlex"):
        p.env.order = pm.MonomialOrder(text)
        return p.env.order
    m = re.match(r"matrix\s*(\[.*\])\s*(lex|drl)$", text, re.S)
    if not m:
        raise p.err("expected 'lex', 'drl' or 'matrix [[..],..] (lex|drl)'", rest)
    rows = p.int_table(_Span(m.group(1), rest.pos + m.start(1)))
    order = _safe(lambda: pm.matrix_order(rows, m.group(2)), p, rest)
    if p.env.ring is not None and len(rows[0]) != p.env.ring.nvars:
        raise p.err(f"weight matrix needs {p.env.ring.nvars} columns", rest)
    p.env.order = order
    return order


def _named(p: _Parser, rest: _Span):
    parts = _split_top(rest, "=", p.src)
    if len(parts) != 2:
        raise p.err("expected '<name> = <value>'", rest.strip())
    return p.ident(parts[0].strip()), parts[1].strip()


def _decl_ideal(p: _Parser, rest: _Span):
    name, body = _named(p, rest)
    ring = p.need_ring(rest)
    gens = [p.poly(s) for s in p.args(body, 1, 99)]
    p.env.ideals[name] = gbm.Ideal(gens, ring)
    return p.env.ideals[name]


def _decl_matrix(p: _Parser, rest: _Span):
    """``matrix q = [[..]]``, ``involutive <n>``, ``trivial <n>`` or ``sqrt <name>``."""
    name, body = _named(p, rest)
    m = re.match(r"(involutive|trivial|sqrt)\s+(\S+)$", body.text)
    if m:
        arg = _Span(m.group(2), body.pos + m.start(2))
        if m.group(1) == "sqrt":
            q = _skew(p.lookup("matrices", arg), p, arg)
            value = _angles(sk.Bicharacter.square_root_of(q).values)
        else:
            n = p.integer(arg)
            if n < 1:
                raise p.err("size must be positive", arg)
            q = sk.involutive_q(n) if m.group(1) == "involutive" else sk.SkewMatrix.trivial(n)
            value = _angles(q.entries)
    else:
        value = p.table(body)
    p.env.matrices[name] = value
    return value


def _decl_cone(p: _Parser, rest: _Span):
    name, body = _named(p, rest)
    p.env.cones[name] = p.cone(body)
    return p.env.cones[name]


def _decl_circuit(p: _Parser, rest: _Span):
    rest = rest.strip()
    m = re.match(r"([A-Za-z_][A-Za-z0-9_]*)\s+(\d+)\s*\{(.*)\}$", rest.text, re.S)
    if not m:
        raise p.err("expected 'circuit <name> <n> { <gates> }'", rest)
    n = int(m.group(2))
    gates = []
    body_pos = rest.pos + m.start(3)
    for g in _split_top(_Span(m.group(3), body_pos), ";", p.src):
        g = g.strip()
        if not g:
            continue
        parts = g.text.split()
        name = parts[0].upper()
        if name not in est.GATE_ARITY:
            raise p.err(f"unknown gate {parts[0]!r}", g)
        if len(parts) - 1 != est.GATE_ARITY[name] or not all(x.isdigit() for x in parts[1:]):
            raise p.err(f"{name} takes {est.GATE_ARITY[name]} qubit index(es)", g)
        gates.append((name, *map(int, parts[1:])))
    circuit = _safe(lambda: est.GateCircuit(n, tuple(gates)), p, rest)
    p.env.circuits[m.group(1)] = circuit
    return circuit


_DECLS = {
    "ring": _decl_ring,
    "order": _decl_order,
    "ideal": _decl_ideal,
    "matrix": _decl_matrix,
    "cone": _decl_cone,
    "circuit": _decl_circuit,
}


# ---------------------------------------------------------------------------
# Formatting helpers
# ---------------------------------------------------------------------------


def _angles(rows):
    return [[p.angle for p in row] for row in rows]


def _skew(rows, p=None, span=None) -> sk.SkewMatrix:
    if p is None:
        return sk.SkewMatrix(tuple(map(tuple, rows)))
    return _safe(lambda: sk.SkewMatrix(tuple(map(tuple, rows))), p, span)


def _vec(v) -> str:
    return "(" + ",".join(str(x) for x in v) + ")"


def _ideal_lines(ideal: gbm.Ideal, order) -> list:
    gb = gbm.buchberger(ideal, order)
    return gb.format() or ["0"]


def _complex(z: complex) -> str:
    re_, im = z.real + 0.0, z.imag + 0.0
    return f"{re_:.12f}{'+' if im >= 0 else '-'}{abs(im):.12f}i"


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Command:
    """A CLI command: ``build`` parses arguments and returns ``action(out, cfg)``."""

    build: Callable
    targets: tuple  # library functions the command reaches
    usage: str


COMMANDS: dict = {}


def command(name, usage, *targets):
    def deco(fn):
        COMMANDS[name] = Command(fn, targets, usage)
        return fn

    return deco


def _emit(out, lines):
    if isinstance(lines, str):
        lines = [lines]
    for line in lines:
        out.write(line + "\n")


@command("gb", "gb I", gbm.buchberger)
def _c_gb(p, rest):
    (a,) = p.args(rest, 1)
    ideal, order = p.ideal(a), p.env.order
    return lambda out, cfg: _emit(out, _ideal_lines(ideal, order))


@command("nf", "nf I, f", io_ops.quotient_ring_nf)
def _c_nf(p, rest):
    a, b = p.args(rest, 2)
    ideal, f, order = p.ideal(a), p.poly(b), p.env.order
    return lambda out, cfg: _emit(out, io_ops.quotient_ring_nf(f, ideal, order).format(order))


@command("intersect", "intersect I, J", io_ops.intersect)
def _c_intersect(p, rest):
    a, b = p.args(rest, 2)
    I, J, order = p.ideal(a), p.ideal(b), p.env.order
    return lambda out, cfg: _emit(out, _ideal_lines(io_ops.intersect(I, J, order), order))


@command("quot", "quot I, J", io_ops.quotient_by_ideal)
def _c_quot(p, rest):
    a, b = p.args(rest, 2)
    I, J, order = p.ideal(a), p.ideal(b), p.env.order
    return lambda out, cfg: _emit(out, _ideal_lines(io_ops.quotient_by_ideal(I, J, order), order))


@command("quot-poly", "quot-poly I, f", io_ops.quotient_by_poly)
def _c_quot_poly(p, rest):
    a, b = p.args(rest, 2)
    I, f, order = p.ideal(a), p.poly(b), p.env.order
    return lambda out, cfg: _emit(out, _ideal_lines(io_ops.quotient_by_poly(I, f, order), order))


@command("member", "member I, f", gbm.member)
def _c_member(p, rest):
    a, b = p.args(rest, 2)
    I, f, order = p.ideal(a), p.poly(b), p.env.order
    return lambda out, cfg: _emit(out, str(gbm.member(f, I, order)).lower())


@command("identities", "identities I, J1, J2, ...", io_ops.verify_quotient_identities)
def _c_identities(p, rest):
    args = p.args(rest, 2, 99)
    I = p.ideal(args[0])
    Js = [p.ideal(a) for a in args[1:]]
    order = p.env.order

    def run(out, cfg):
        ok = io_ops.verify_quotient_identities(Js, I, order)
        _emit(out, "PASS (both identities)" if ok else "FAIL")

    return run


@command("reduce", "reduce f, g1, g2, ...", pm.divide)
def _c_reduce(p, rest):
    args = p.args(rest, 2, 99)
    f = p.poly(args[0])
    gs = [p.poly(a) for a in args[1:]]
    order = p.env.order

    def run(out, cfg):
        qs, r = pm.divide(f, gs, order)
        _emit(out, [f"q{k + 1} = {q.format(order)}" for k, q in enumerate(qs)] + [f"r = {r.format(order)}"])

    return run


@command("spoly", "spoly f, g", gbm.s_polynomial)
def _c_spoly(p, rest):
    a, b = p.args(rest, 2)
    f, g, order = p.poly(a), p.poly(b), p.env.order
    return lambda out, cfg: _emit(out, gbm.s_polynomial(f, g, order).format(order))


@command("lm", "lm f (leading term)", pm.leading_monomial)
def _c_lm(p, rest):
    (a,) = p.args(rest, 1)
    f, order, ring = p.poly(a), p.env.order, p.env.ring

    def run(out, cfg):
        m, c = pm.leading_monomial(f, order)
        _emit(out, ring.monomial(m, c).format(order))

    return run


@command("compare", "compare [a1,..], [b1,..]", pm.compare_monomials)
def _c_compare(p, rest):
    a, b = p.args(rest, 2)
    x, y, order = tuple(p.int_vector(a)), tuple(p.int_vector(b)), p.env.order
    return lambda out, cfg: _emit(out, str(pm.compare_monomials(x, y, order)))


@command("eval", "eval f, [v1,..]", pm.Polynomial.evaluate)
def _c_eval(p, rest):
    a, b = p.args(rest, 2)
    f, point = p.poly(a), p.vector(b)
    return lambda out, cfg: _emit(out, str(f.evaluate(point)))


def _word(p, span, n):
    items = p.literal(span)
    if not isinstance(items, list):
        raise p.err("expected a word like [2,1] or [[1,2],[2,-1]]", span)
    word = []
    for it in items:
        if isinstance(it, list):
            if len(it) != 2:
                raise p.err("word letters are i or [i, exponent]", span)
            i, e = int(it[0]), int(it[1])
        else:
            i, e = abs(int(it)), (1 if it > 0 else -1)
        if not 1 <= i <= n:
            raise p.err(f"generator index {i} out of range 1..{n}", span)
        word.append((i - 1, e))
    return word


def _chi(p, span, n):
    if span.text == "none":
        return None
    rows = p.matrix(span)
    return _safe(lambda: sk.Bicharacter(tuple(map(tuple, rows))), p, span)


@command("skew-nf", "skew-nf q, [word]", sk.skew_normal_form)
def _c_skew_nf(p, rest):
    a, b = p.args(rest, 2)
    q = _skew(p.matrix(a), p, a)
    word = _word(p, b, q.n)
    return lambda out, cfg: _emit(out, sk.skew_normal_form(word, q).format())


@command("twist", "twist q, chi|none, [a], [b]", sk.twist_product)
def _c_twist(p, rest):
    a, b, c, d = p.args(rest, 4)
    q = _skew(p.matrix(a), p, a)
    chi = _chi(p, b, q.n)
    x, y = p.int_vector(c), p.int_vector(d)
    for v, s in ((x, c), (y, d)):
        if len(v) != q.n:
            raise p.err(f"exponent vector needs {q.n} entries", s)

    def run(out, cfg):
        ex = sk.SkewElement(q, {tuple(x): sk.Cyclotomic(1)})
        ey = sk.SkewElement(q, {tuple(y): sk.Cyclotomic(1)})
        _emit(out, sk.twist_product(ex, ey, chi).format())

    return run


@command("defect", "defect q, chi, i, j", sk.faithfulness_defect)
def _c_defect(p, rest):
    a, b, c, d = p.args(rest, 4)
    q = _skew(p.matrix(a), p, a)
    chi = _chi(p, b, q.n)
    i, j = p.integer(c), p.integer(d)
    for v, s in ((i, c), (j, d)):
        if not 1 <= v <= q.n:
            raise p.err(f"index out of range 1..{q.n}", s)
    chi = chi or sk.Bicharacter.trivial(q.n)
    return lambda out, cfg: _emit(out, str(sk.faithfulness_defect(i - 1, j - 1, q, chi)))


@command("braid-check", "braid-check q, chi | braid-check n", sk.braid_check)
def _c_braid(p, rest):
    args = p.args(rest, 1, 2)
    if len(args) == 1:
        n = p.integer(args[0])
        q, chi = _safe(lambda: sk.SkewMatrix.trivial(n), p, args[0]), sk.Bicharacter.trivial(n)
    else:
        q = _skew(p.matrix(args[0]), p, args[0])
        chi = _chi(p, args[1], q.n) or sk.Bicharacter.trivial(q.n)
    return lambda out, cfg: _emit(out, str(sk.braid_check(q.n, None, q, chi)))


@command("involutive", "involutive n", sk.involutive_q)
def _c_involutive(p, rest):
    (a,) = p.args(rest, 1)
    n = p.integer(a)
    return lambda out, cfg: _emit(out, str(sk.involutive_q(n)).splitlines())


def _blade(p, span, D=None):
    v = p.int_vector(span)
    if D is not None and any(not 1 <= i <= D for i in v):
        raise p.err(f"blade index out of range 1..{D}", span)
    if any(i < 1 for i in v):
        raise p.err("blade indices are 1-based", span)
    return [i - 1 for i in v]


@command("clifford", "clifford eta, [blade], [blade]", ch.clifford_product)
def _c_clifford(p, rest):
    a, b, c = p.args(rest, 3)
    rows = p.matrix(a)
    sig = _safe(lambda: ch.Signature(tuple(map(tuple, rows))), p, a)
    x, y = _blade(p, b, sig.D), _blade(p, c, sig.D)

    def run(out, cfg):
        ex, ey = ch.CliffordElement.blade(sig, x), ch.CliffordElement.blade(sig, y)
        _emit(out, ch.clifford_product(ex, ey).format())

    return run


@command("grassmann", "grassmann [blade], [blade]", ch.grassmann_product)
def _c_grassmann(p, rest):
    b, c = p.args(rest, 2)
    x, y = _blade(p, b), _blade(p, c)
    D = max([1] + [i + 1 for i in x + y])
    sig = ch.Signature.zero(D)

    def run(out, cfg):
        ex, ey = ch.CliffordElement.blade(sig, x), ch.CliffordElement.blade(sig, y)
        _emit(out, ch.grassmann_product(ex, ey).format())

    return run


@command("basis-dim", "basis-dim D", ch.basis_dimension)
def _c_basis_dim(p, rest):
    (a,) = p.args(rest, 1)
    D = p.integer(a)
    return lambda out, cfg: _emit(out, str(ch.basis_dimension(D)))


def _clh_word(p, span, D):
    if span.text == "1":
        return ch.CLHElement.one(D)
    acc = ch.CLHElement.one(D)
    for f in _split_top(span, "*", p.src):
        f = f.strip()
        m = re.match(r"([EG])(\d+)$", f.text)
        if not m:
            raise p.err(f"expected E<i> or G<i>, found {f.text!r}", f)
        i, hi = int(m.group(2)), D if m.group(1) == "E" else D + 1
        if not 1 <= i <= hi:
            raise p.err(f"{m.group(1)} index out of range 1..{hi}", f)
        gen = ch.CLHElement.E(D, i - 1) if m.group(1) == "E" else ch.CLHElement.G(D, i - 1)
        acc = acc * gen
    return acc


@command("clh", "clh D, coproduct|antipode|counit, <word>", ch.clh_apply)
def _c_clh(p, rest):
    a, b, c = p.args(rest, 3)
    D = p.integer(a)
    if D < 1:
        raise p.err("D must be at least 1", a)
    name = p.word(b)
    if name not in ("coproduct", "antipode", "counit"):
        raise p.err(f"unknown map {name!r}", b)
    x = _clh_word(p, c, D)

    def run(out, cfg):
        r = ch.clh_apply(name, x)
        _emit(out, str(r) if not hasattr(r, "format") else r.format())

    return run


@command("clh-check", "clh-check D", ch.clh_morphism_check)
def _c_clh_check(p, rest):
    (a,) = p.args(rest, 1)
    D = p.integer(a)
    return lambda out, cfg: _emit(out, str(ch.clh_morphism_check(D)).splitlines())


@command("dual-cone", "dual-cone c", tr.dual_cone)
def _c_dual(p, rest):
    (a,) = p.args(rest, 1)
    c = p.cone(a)
    return lambda out, cfg: _emit(out, str(tr.dual_cone(c)))


@command("regular", "regular c", tr.is_regular)
def _c_regular(p, rest):
    (a,) = p.args(rest, 1)
    c = p.cone(a)
    return lambda out, cfg: _emit(out, str(tr.is_regular(c)).lower())


@command("fan", "fan D", tr.projective_fan)
def _c_fan(p, rest):
    (a,) = p.args(rest, 1)
    D = p.integer(a)
    return lambda out, cfg: _emit(out, [str(c) for c in tr.projective_fan(D).maximal_cones()])


@command("complete", "complete D | complete c1, c2, ...", tr.is_complete)
def _c_complete(p, rest):
    args = p.args(rest, 1, 99)
    if len(args) == 1 and re.match(r"\d+$", args[0].text):
        D = p.integer(args[0])
        make = lambda: tr.projective_fan(D)  # noqa: E731
    else:
        cones = [p.cone(a) for a in args]
        make = lambda: tr.Fan(cones)  # noqa: E731

    def run(out, cfg):
        r = tr.is_complete(make(), seed=cfg.seed)
        _emit(out, "true" if r else f"false witness {_vec(r.witness)}")

    return run


@command("hilbert", "hilbert c", tr.hilbert_basis)
def _c_hilbert(p, rest):
    (a,) = p.args(rest, 1)
    c = p.cone(a)
    return lambda out, cfg: _emit(out, " ".join(_vec(v) for v in tr.hilbert_basis(c)))


@command("toric-ideal", "toric-ideal [[a1],..] | toric-ideal c", tr.toric_ideal)
def _c_toric(p, rest):
    (a,) = p.args(rest, 1)
    if a.text[:1] in "([":
        points = p.int_table(a)
        if not points:
            raise p.err("need at least one lattice point", a)
        make = lambda: points  # noqa: E731
    else:
        c = p.lookup("cones", a)
        make = lambda: tr.hilbert_basis(c)  # noqa: E731

    def run(out, cfg):
        I = tr.toric_ideal(make())
        _emit(out, _ideal_lines(I, pm.DEGREVLEX))

    return run


def _bits(p, span, circuit):
    if not re.match(r"[01]+$", span.text):
        raise p.err("expected a bitstring", span)
    if len(span.text) != circuit.n:
        raise p.err(f"bitstring must have {circuit.n} bits", span)
    return span.text


def _estimate_cfg(cfg: RunConfig) -> est.EstimateConfig:
    return est.EstimateConfig(cfg.delta, cfg.seed, cfg.samples)


@command("amplitude", "amplitude C, bits", est.amplitude)
def _c_amplitude(p, rest):
    a, b = p.args(rest, 2)
    c = p.lookup("circuits", a)
    x = _bits(p, b, c)
    return lambda out, cfg: _emit(out, _complex(est.amplitude(c, x)))


@command("estimate", "estimate C, bits", est.additive_estimate)
def _c_estimate(p, rest):
    a, b = p.args(rest, 2)
    c = p.lookup("circuits", a)
    x = _bits(p, b, c)
    return lambda out, cfg: _emit(out, est.additive_estimate(c, x, _estimate_cfg(cfg)).format())


@command("decide", "decide C, bits[, accept, reject]", est.bqp_decide)
def _c_decide(p, rest):
    args = p.args(rest, 2, 4)
    if len(args) == 3:
        raise p.err("give both thresholds or neither", rest.strip())
    c = p.lookup("circuits", args[0])
    x = _bits(p, args[1], c)
    th = (Fraction(3, 4), Fraction(1, 4))
    if len(args) == 4:
        th = (p.rational(args[2]), p.rational(args[3]))
    return lambda out, cfg: _emit(out, str(est.bqp_decide(c, x, _estimate_cfg(cfg), th)))


@command("bench", "bench family, nmin, nmax, d", est.gb_scaling_bench)
def _c_bench(p, rest):
    a, b, c, d = p.args(rest, 4)
    family = p.word(a)
    if family not in est.FAMILIES:
        raise p.err(f"unknown family {family!r}", a)
    lo, hi, deg = p.integer(b), p.integer(c), p.integer(d)
    order = p.env.order
    return lambda out, cfg: est.gb_scaling_bench(family, range(lo, hi + 1), deg, order, out, cfg.seed)


# ---------------------------------------------------------------------------
# Entry points
# ---------------------------------------------------------------------------


def parse_program(text: str) -> Program:
    """Parse and resolve a program; raises :class:`ParseError` with a location."""
    return _Parser(text).parse()


def run(program: Program, out=None, cfg: RunConfig | None = None, err=None) -> int:
    """Execute the commands in order; returns the exit code (0 ok, 1 domain error)."""
    out = out if out is not None else sys.stdout
    err = err if err is not None else sys.stderr
    cfg = cfg or RunConfig()
    for st in program.statements:
        if st.action is None:
            continue
        try:
            st.action(out, cfg)
        except (AlgebraError, ValueError, ZeroDivisionError) as e:
            err.write(f"error: line {st.line}, col {st.col}: {st.kind}: {e}\n")
            return 1
    return 0


def run_text(text: str, cfg: RunConfig | None = None) -> tuple:
    """Parse and run ``text``; returns ``(exit_code, stdout, stderr)``."""
    out, err = io.StringIO(), io.StringIO()
    try:
        program = parse_program(text)
    except ParseError as e:
        err.write(f"syntax error: {e}\n")
        return 2, out.getvalue(), err.getvalue()
    except (AlgebraError, ValueError) as e:
        err.write(f"error: {e}\n")
        return 1, out.getvalue(), err.getvalue()
    code = run(program, out, cfg, err)
    return code, out.getvalue(), err.getvalue()


def _delta(text: str) -> Fraction:
    try:
        d = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"bad delta {text!r}; use k/m") from None
    if d <= 0:
        raise argparse.ArgumentTypeError("delta must be positive")
    return d


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="exactalg", description="Run an exactalg program.")
    ap.add_argument("--in", dest="infile", help="program file (default: stdin)")
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--samples", type=int, default=None)
    ap.add_argument("--delta", type=_delta, default=Fraction(1, 10), help="precision as k/m")
    ap.add_argument("--out", help="output file (default: stdout)")
    args = ap.parse_args(argv)
    if args.seed < 0 or (args.samples is not None and args.samples < 1):
        ap.error("seed must be nonnegative and samples positive")
    if args.infile:
        with open(args.infile, encoding="utf-8") as fh:
            text = fh.read()
    else:
        text = sys.stdin.read()
    code, out, err = run_text(text, RunConfig(args.seed, args.samples, args.delta))
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    sys.stderr.write(err)
    return code


if __name__ == "__main__":
    sys.exit(main())
