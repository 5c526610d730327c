"""Exact coefficient fields, sparse (Laurent-capable) polynomials and monomial orders.

Monomials are plain tuples of integer exponents. A :class:`Polynomial` is an
immutable map ``monomial -> coefficient`` bound to a :class:`PolyRing`, which
fixes the variable count, the coefficient field and the variable names.

    >>> R = PolyRing.from_names("x,y")
    >>> x, y = R.gens
    >>> (x + y) * (x - y)
    Polynomial(x^2 - y^2)
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import sympy

from .errors import (
    DimensionError,
    InvalidDivisorError,
    ParseError,
    UndefinedLeadingTermError,
)

Monomial = tuple  # tuple[int, ...]


# ---------------------------------------------------------------------------
# Coefficient fields
# ---------------------------------------------------------------------------


class ModP:
    """Residue modulo a prime, stored in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, ModP):
            if other.p != self.p:
                raise DimensionError(f"mixing F_{self.p} and F_{other.p}")
            return other.v
        if isinstance(other, int):
            return other
        if isinstance(other, Fraction):
            return other.numerator * pow(other.denominator, -1, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return NotImplemented if o is NotImplemented else ModP(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError(f"division by zero in F_{self.p}")
        return ModP(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return ModP(o, self.p) / self

    def __neg__(self):
        return ModP(-self.v, self.p)

    def __pow__(self, k: int):
        if k < 0:
            return ModP(pow(self.v, -1, self.p), self.p) ** (-k)
        return ModP(pow(self.v, k, self.p), self.p)

    def inverse(self):
        return ModP(1, self.p) / self

    def __eq__(self, other):
        if isinstance(other, ModP):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return self.v == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"ModP({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


@dataclass(frozen=True)
class RationalField:
    """The field of rationals; elements are :class:`fractions.Fraction`."""

    name: str = "Q"

    def __call__(self, value) -> Fraction:
        if isinstance(value, ModP):
            raise DimensionError("cannot lift a prime-field residue to Q")
        return Fraction(value)

    @property
    def characteristic(self) -> int:
        return 0


@dataclass(frozen=True)
class PrimeField:
    """The prime field F_p; elements are :class:`ModP`."""

    p: int

    def __post_init__(self):
        if not sympy.isprime(self.p):
            raise ValueError(f"{self.p} is not prime")

    @property
    def name(self) -> str:
        return f"F{self.p}"

    @property
    def characteristic(self) -> int:
        return self.p

    def __call__(self, value) -> ModP:
        if isinstance(value, ModP):
            if value.p != self.p:
                raise DimensionError(f"residue mod {value.p} is not in F_{self.p}")
            return value
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise ZeroDivisionError(f"denominator divisible by {self.p}")
            return ModP(value.numerator * pow(value.denominator, -1, self.p), self.p)
        return ModP(int(value), self.p)


QQ = RationalField()


# ---------------------------------------------------------------------------
# Roots of unity
# ---------------------------------------------------------------------------


@dataclass(frozen=True, order=True)
class Phase:
    """The root of unity ``exp(2*pi*i * angle)`` with ``angle`` in ``[0, 1)``."""

    angle: Fraction = Fraction(0)

    def __init__(self, k=0, m=1):
        a = Fraction(k, m) if not isinstance(k, Fraction) else k / m
        object.__setattr__(self, "angle", a - math.floor(a))

    @classmethod
    def parse(cls, text: str) -> "Phase":
        return cls(Fraction(text.strip()))

    def __mul__(self, other: "Phase") -> "Phase":
        if not isinstance(other, Phase):
            return NotImplemented
        return Phase(self.angle + other.angle)

    def __truediv__(self, other: "Phase") -> "Phase":
        return Phase(self.angle - other.angle)

    def __pow__(self, k: int) -> "Phase":
        return Phase(self.angle * k)

    def inverse(self) -> "Phase":
        return Phase(-self.angle)

    @property
    def is_one(self) -> bool:
        return self.angle == 0

    @property
    def order(self) -> int:
        """Multiplicative order, i.e. the reduced denominator of the angle."""
        return self.angle.denominator

    def to_complex(self) -> complex:
        return complex(math.cos(2 * math.pi * self.angle), math.sin(2 * math.pi * self.angle))

    def __str__(self):
        return f"{self.angle.numerator}/{self.angle.denominator}"

    def __repr__(self):
        return f"Phase({self})"


# ---------------------------------------------------------------------------
# Monomials and orders
# ---------------------------------------------------------------------------


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True if ``a`` divides ``b``."""
    return all(x <= y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _lex_key(m):
    return m


def _drl_key(m):
    return (sum(m), tuple(-e for e in reversed(m)))


_TIEBREAKS = {"lex": _lex_key, "degrevlex": _drl_key}
_ALIASES = {"drl": "degrevlex", "grevlex": "degrevlex", "degrevlex": "degrevlex", "lex": "lex"}


@dataclass(frozen=True)
class MonomialOrder:
    """A multiplicative total order on monomials.

    ``kind`` is ``"lex"``, ``"degrevlex"`` or ``"matrix"``. A matrix order
    compares ``M @ a`` lexicographically and falls back to ``tiebreak`` on
    ties; ``M`` must have nonnegative integer entries and independent rows.

    ``key(m)`` maps a monomial to a sortable key: larger key, larger monomial.
    """

    kind: str = "degrevlex"
    matrix: tuple | None = None
    tiebreak: str | None = None
    _keyfn: object = field(default=None, init=False, repr=False, compare=False)

    def __post_init__(self):
        kind = _ALIASES.get(self.kind, self.kind)
        object.__setattr__(self, "kind", kind)
        if kind in _TIEBREAKS:
            if self.matrix is not None:
                raise ValueError(f"{kind} order takes no matrix")
            object.__setattr__(self, "_keyfn", _TIEBREAKS[kind])
            return
        if kind != "matrix":
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.matrix is None or len(self.matrix) == 0:
            raise ValueError("matrix order needs a nonempty weight matrix")
        rows = tuple(tuple(int(e) for e in row) for row in self.matrix)
        ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DimensionError("ragged weight matrix")
        if any(e < 0 for r in rows for e in r):
            raise ValueError("weight matrix entries must be nonnegative")
        if sympy.Matrix(rows).rank() != len(rows):
            raise ValueError("weight matrix rows must be linearly independent")
        tb = _ALIASES.get(self.tiebreak or "degrevlex")
        if tb not in _TIEBREAKS:
            raise ValueError(f"unknown tiebreak {self.tiebreak!r}")
        object.__setattr__(self, "matrix", rows)
        object.__setattr__(self, "tiebreak", tb)
        tbkey = _TIEBREAKS[tb]

        def key(m, rows=rows, tbkey=tbkey):
            if len(m) != ncols:
                raise DimensionError(f"monomial has {len(m)} variables, order expects {ncols}")
            return (tuple(sum(w * e for w, e in zip(r, m)) for r in rows), tbkey(m))

        object.__setattr__(self, "_keyfn", key)

    def key(self, m: Monomial):
        return self._keyfn(m)

    @property
    def name(self) -> str:
        return {"lex": "lex", "degrevlex": "drl", "matrix": "matrix"}[self.kind]

    def __str__(self):
        if self.kind == "matrix":
            rows = ",".join("[" + ",".join(map(str, r)) + "]" for r in self.matrix)
            return f"matrix [{rows}] {'lex' if self.tiebreak == 'lex' else 'drl'}"
        return self.name


LEX = MonomialOrder("lex")
DEGREVLEX = MonomialOrder("degrevlex")


def matrix_order(rows: Sequence[Sequence[int]], tiebreak: str = "degrevlex") -> MonomialOrder:
    return MonomialOrder("matrix", tuple(map(tuple, rows)), tiebreak)


def compare_monomials(a: Monomial, b: Monomial, order: MonomialOrder) -> int:
    """Return -1, 0 or 1 as ``a`` is less than, equal to or greater than ``b``."""
    if len(a) != len(b):
        raise DimensionError(f"monomials of length {len(a)} and {len(b)}")
    ka, kb = order.key(a), order.key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# Rings and polynomials
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PolyRing:
    """Variable count, coefficient field and variable names."""

    nvars: int
    field: RationalField | PrimeField = QQ
    names: tuple = None

    def __post_init__(self):
        if self.names is None:
            object.__setattr__(self, "names", tuple(f"x{i + 1}" for i in range(self.nvars)))
        else:
            object.__setattr__(self, "names", tuple(self.names))
        if len(self.names) != self.nvars:
            raise DimensionError("one name per variable required")

    @classmethod
    def from_names(cls, names: str | Iterable[str], field=QQ) -> "PolyRing":
        if isinstance(names, str):
            names = [s.strip() for s in names.split(",") if s.strip()]
        names = tuple(names)
        return cls(len(names), field, names)

    @property
    def gens(self) -> tuple:
        one = self.field(1)
        return tuple(
            Polynomial._raw(self, {tuple(int(i == j) for j in range(self.nvars)): one})
            for i in range(self.nvars)
        )

    def zero(self) -> "Polynomial":
        return Polynomial._raw(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c) -> "Polynomial":
        c = self.field(c)
        return Polynomial._raw(self, {(0,) * self.nvars: c} if c else {})

    def monomial(self, exps: Sequence[int], coeff=1) -> "Polynomial":
        if len(exps) != self.nvars:
            raise DimensionError(f"expected {self.nvars} exponents, got {len(exps)}")
        c = self.field(coeff)
        return Polynomial._raw(self, {tuple(exps): c} if c else {})

    def __call__(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def extend(self, names: Sequence[str]) -> "PolyRing":
        """Ring with extra variables appended after the existing ones."""
        return PolyRing(self.nvars + len(names), self.field, self.names + tuple(names))


class Polynomial:
    """Immutable sparse polynomial. Exponents may be negative (Laurent)."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: PolyRing, terms: dict | None = None):
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(int(e) for e in m)
            if len(m) != ring.nvars:
                raise DimensionError(f"monomial {m} has wrong length for {ring.nvars} variables")
            c = ring.field(c)
            if m in clean:
                c = clean[m] + c
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self.ring = ring
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, ring, terms):
        p = object.__new__(cls)
        p.ring = ring
        p.terms = terms
        p._hash = None
        return p

    # -- basic protocol ------------------------------------------------------

    def __bool__(self):
        return bool(self.terms)

    is_zero = property(lambda self: not self.terms)

    def __len__(self):
        return len(self.terms)

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring == other.ring and self.terms == other.terms
        if isinstance(other, (int, Fraction, ModP)):
            return self == self.ring.constant(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.ring, frozenset(self.terms.items())))
        return self._hash

    def _check(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise DimensionError("polynomials live in different rings")
            return other
        if isinstance(other, (int, Fraction, ModP)):
            return self.ring.constant(other)
        return None

    # -- arithmetic ----------------------------------------------------------

    def __add__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = out[m] + c if m in out else c
            if s:
                out[m] = s
            else:
                del out[m]
        return Polynomial._raw(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.ring, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._check(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, ModP)):
            return self.scale(other)
        other = self._check(other)
        if other is None:
            return NotImplemented
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                s = out[m] + c1 * c2 if m in out else c1 * c2
                if s:
                    out[m] = s
                else:
                    del out[m]
        return Polynomial._raw(self.ring, out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers of polynomials are not supported")
        result, base = self.ring.one(), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def scale(self, c) -> "Polynomial":
        c = self.ring.field(c)
        if not c:
            return self.ring.zero()
        return Polynomial._raw(self.ring, {m: v * c for m, v in self.terms.items()})

    def mul_term(self, mono: Monomial, coeff) -> "Polynomial":
        """Multiply by the single term ``coeff * x^mono``."""
        if not coeff:
            return self.ring.zero()
        return Polynomial._raw(
            self.ring,
            {tuple(a + b for a, b in zip(m, mono)): c * coeff for m, c in self.terms.items()},
        )

    # -- queries -------------------------------------------------------------

    def leading_term(self, order: MonomialOrder) -> tuple:
        if not self.terms:
            raise UndefinedLeadingTermError("the zero polynomial has no leading term")
        m = max(self.terms, key=order.key)
        return m, self.terms[m]

    def monic(self, order: MonomialOrder) -> "Polynomial":
        if not self.terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field(1) / c)

    def sorted_terms(self, order: MonomialOrder) -> list:
        """Terms in descending order."""
        return sorted(self.terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    @property
    def is_laurent(self) -> bool:
        return any(e < 0 for m in self.terms for e in m)

    def total_degree(self) -> int:
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        return len({sum(m) for m in self.terms}) <= 1

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    def coefficient(self, mono: Monomial):
        return self.terms.get(tuple(mono), self.ring.field(0))

    def evaluate(self, point: Sequence):
        """Evaluate at a point of field elements (negative exponents allowed)."""
        total = self.ring.field(0)
        for m, c in self.terms.items():
            t = c
            for v, e in zip(point, m):
                t = t * (v ** e)
            total = total + t
        return total

    # -- printing ------------------------------------------------------------

    def format(self, order: MonomialOrder = DEGREVLEX) -> str:
        if not self.terms:
            return "0"
        pieces = []
        for m, c in self.sorted_terms(order):
            mono = _format_monomial(m, self.ring.names)
            cs = str(c)
            if not mono:
                term = cs
            elif cs == "1":
                term = mono
            elif cs == "-1":
                term = "-" + mono
            else:
                term = f"{cs}*{mono}"
            if pieces:
                pieces.append(" - " + term[1:] if term.startswith("-") else " + " + term)
            else:
                pieces.append(term)
        return "".join(pieces)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"Polynomial({self.format()})"


def _format_monomial(m, names) -> str:
    parts = []
    for name, e in zip(names, m):
        if e == 1:
            parts.append(name)
        elif e != 0:
            parts.append(f"{name}^{e}")
    return "*".join(parts)


def _same_ring(polys):
    rings = {p.ring for p in polys}
    if len(rings) > 1:
        raise DimensionError("polynomials live in different rings")


def leading_monomial(f: Polynomial, order: MonomialOrder) -> tuple:
    """Return ``(monomial, coefficient)`` of the order-maximal term of ``f``."""
    return f.leading_term(order)


def poly_arith(f: Polynomial, g: Polynomial, op: str) -> Polynomial:
    _same_ring([f, g])
    if op == "add":
        return f + g
    if op == "sub":
        return f - g
    if op == "mul":
        return f * g
    raise ValueError(f"unknown operation {op!r}")


def divide(f: Polynomial, divisors: Sequence[Polynomial], order: MonomialOrder):
    """Multivariate division with remainder.

    Returns ``(quotients, remainder)`` with ``f == sum(q*g) + remainder`` and
    no term of ``remainder`` divisible by any leading monomial. When several
    divisors apply, the first one in list order is used.
    """
    _same_ring([f, *divisors])
    if any(not g for g in divisors):
        raise InvalidDivisorError("cannot divide by the zero polynomial")
    ring = f.ring
    leads = [g.leading_term(order) for g in divisors]
    quotients = [dict() for _ in divisors]
    p = dict(f.terms)
    rem = {}
    key = order.key
    while p:
        m = max(p, key=key)
        c = p[m]
        for i, (lm, lc) in enumerate(leads):
            if all(a <= b for a, b in zip(lm, m)):
                qm = tuple(a - b for a, b in zip(m, lm))
                qc = c / lc
                quotients[i][qm] = quotients[i].get(qm, 0) + qc
                for gm, gc in divisors[i].terms.items():
                    t = tuple(a + b for a, b in zip(gm, qm))
                    s = p[t] - qc * gc if t in p else -qc * gc
                    if s:
                        p[t] = s
                    else:
                        del p[t]
                break
        else:
            rem[m] = c
            del p[m]
    qs = [Polynomial._raw(ring, {m: c for m, c in q.items() if c}) for q in quotients]
    return qs, Polynomial._raw(ring, rem)


def reduce_mod_set(f: Polynomial, G: Sequence[Polynomial], order: MonomialOrder) -> Polynomial:
    """Remainder of ``f`` on division by ``G`` (first divisor in list order wins)."""
    if not G:
        raise InvalidDivisorError("empty divisor list")
    return divide(f, G, order)[1]


# ---------------------------------------------------------------------------
# Text form
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


def _tokenize(text):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:
            break
        if m.group(1) is not None:
            out.append(("num", int(m.group(1)), m.start(1)))
        elif m.group(2) is not None:
            out.append(("id", m.group(2), m.start(2)))
        elif m.group(3) is not None:
            out.append(("op", m.group(3), m.start(3)))
        pos = m.end()
    out.append(("end", None, len(text)))
    return out


def parse_polynomial(text: str, ring: PolyRing) -> Polynomial:
    """Parse ``^``/``*``/``+``/``-`` expressions with integer or ``a/b`` coefficients.

    Raises :class:`ParseError` whose ``col`` is the 0-based offset in ``text``.
    """
    toks = _tokenize(text)
    index = {name: i for i, name in enumerate(ring.names)}
    pos = 0

    def peek():
        return toks[pos]

    def take(kind=None, value=None):
        nonlocal pos
        t = toks[pos]
        if (kind and t[0] != kind) or (value is not None and t[1] != value):
            want = value if value is not None else kind
            raise ParseError(f"expected {want!r}, found {t[1] if t[1] is not None else 'end'!r}", col=t[2])
        pos += 1
        return t

    def factor():
        t = peek()
        if t[0] == "num":
            take()
            num = Fraction(t[1])
            if peek()[:2] == ("op", "/"):
                take()
                d = take("num")
                if d[1] == 0:
                    raise ParseError("zero denominator", col=d[2])
                num = num / d[1]
            return ring.constant(num)
        if t[0] == "id":
            take()
            if t[1] not in index:
                raise ParseError(f"unknown variable {t[1]!r}", col=t[2])
            exps = [0] * ring.nvars
            e = 1
            if peek()[:2] == ("op", "^"):
                take()
                e = take("num")[1]
            exps[index[t[1]]] = e
            return ring.monomial(exps)
        raise ParseError(f"unexpected {t[1] if t[1] is not None else 'end'!r}", col=t[2])

    def term():
        r = factor()
        while peek()[:2] == ("op", "*"):
            take()
            r = r * factor()
        return r

    sign = 1
    if peek()[:2] in (("op", "-"), ("op", "+")):
        sign = -1 if take()[1] == "-" else 1
    result = term() * sign
    while peek()[0] == "op" and peek()[1] in "+-":
        s = take()[1]
        t = term()
        result = result + t if s == "+" else result - t
    if peek()[0] != "end":
        t = peek()
        raise ParseError(f"unexpected {t[1]!r}", col=t[2])
    return result
