"""Quantum tori, cocycle twists and braid-relation checks.

Generators ``x_0 .. x_{n-1}`` satisfy ``x_i x_j = q_ij x_j x_i`` for a
multiplicatively antisymmetric matrix ``q`` of roots of unity. Elements are
kept normal-ordered (ascending index, Laurent exponents) with coefficients in
a cyclotomic field, so all identities are decided by exact equality.

A bicharacter ``chi`` on Z^r deforms the product into
``a * b = chi(deg a, deg b) a b``.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

import sympy

from .errors import DimensionError, InvalidPairError
from .poly import QQ, Phase, Polynomial, PolyRing
from .reports import CheckReport


# ---------------------------------------------------------------------------
# Cyclotomic coefficients
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _cyclotomic(n: int) -> tuple:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    z = sympy.Symbol("z")
    return tuple(int(c) for c in reversed(sympy.Poly(sympy.cyclotomic_poly(n, z), z).all_coeffs()))


def _reduced_vector(terms: dict, n: int) -> list:
    """Coordinates of ``sum c * zeta^(angle)`` in the power basis of Q(zeta_n)."""
    vec = [Fraction(0)] * n
    for angle, c in terms.items():
        k = angle * n
        if k.denominator != 1:
            raise ValueError("angle not an n-th root of unity")
        vec[int(k) % n] += c
    phi = _cyclotomic(n)
    deg = len(phi) - 1
    for top in range(n - 1, deg - 1, -1):
        c = vec[top]
        if c:
            shift = top - deg
            for k, pk in enumerate(phi):
                vec[shift + k] -= c * pk
    return vec[:deg]


def _denominator(terms) -> int:
    n = 1
    for a in terms:
        n = math.lcm(n, a.denominator)
    return n


class Cyclotomic:
    """Exact element of Q(zeta) written as ``sum coeff * exp(2 pi i angle)``."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        raw = {}
        if isinstance(terms, Phase):
            raw = {terms.angle: Fraction(1)}
        elif isinstance(terms, (int, Fraction)):
            raw = {Fraction(0): Fraction(terms)}
        elif terms:
            for a, c in terms.items():
                a = a.angle if isinstance(a, Phase) else Fraction(a)
                a -= math.floor(a)
                raw[a] = raw.get(a, Fraction(0)) + Fraction(c)
        n = _denominator(raw)
        vec = _reduced_vector(raw, n)
        self.terms = {Fraction(k, n): c for k, c in enumerate(vec) if c}

    @classmethod
    def coerce(cls, x) -> "Cyclotomic":
        return x if isinstance(x, Cyclotomic) else cls(x)

    @property
    def conductor(self) -> int:
        return _denominator(self.terms)

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, (Cyclotomic, Phase, int, Fraction)):
            return NotImplemented
        other = Cyclotomic.coerce(other)
        n = math.lcm(self.conductor, other.conductor)
        return _reduced_vector(self.terms, n) == _reduced_vector(other.terms, n)

    __hash__ = None

    def __add__(self, other):
        other = Cyclotomic.coerce(other)
        merged = dict(self.terms)
        for a, c in other.terms.items():
            merged[a] = merged.get(a, Fraction(0)) + c
        return Cyclotomic(merged)

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic({a: -c for a, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-Cyclotomic.coerce(other))

    def __mul__(self, other):
        other = Cyclotomic.coerce(other)
        out = {}
        for a, c in self.terms.items():
            for b, d in other.terms.items():
                s = a + b
                s -= math.floor(s)
                out[s] = out.get(s, Fraction(0)) + c * d
        return Cyclotomic(out)

    __rmul__ = __mul__

    def scaled_phase(self):
        """``(c, w)`` with rational ``c > 0`` and root of unity ``w`` such that
        ``self == c * w``, or ``None`` when no such form exists."""
        if not self.terms:
            return None
        n = 2 * self.conductor
        for k in range(n):
            w = Phase(k, n)
            r = self * Cyclotomic(w.inverse())
            if set(r.terms) == {Fraction(0)} and r.terms[Fraction(0)] > 0:
                return r.terms[Fraction(0)], w
        return None

    def as_phase(self) -> Phase | None:
        sp = self.scaled_phase()
        if sp is None or sp[0] != 1:
            return None
        return sp[1]

    def inverse(self) -> "Cyclotomic":
        sp = self.scaled_phase()
        if sp is None:
            raise ZeroDivisionError("only scaled roots of unity are inverted")
        c, w = sp
        return Cyclotomic({w.inverse().angle: 1 / c})

    def to_complex(self) -> complex:
        return sum((float(c) * Phase(a).to_complex() for a, c in self.terms.items()), 0j)

    def __str__(self):
        if not self.terms:
            return "0"
        if set(self.terms) == {Fraction(0)}:
            return str(self.terms[Fraction(0)])
        sp = self.scaled_phase()
        if sp is not None:
            c, w = sp
            return f"[{w}]" if c == 1 else f"{c}*[{w}]"
        return " + ".join(f"{c}*[{Phase(a)}]" for a, c in sorted(self.terms.items()))

    def __repr__(self):
        return f"Cyclotomic({self})"


# ---------------------------------------------------------------------------
# Deformation data
# ---------------------------------------------------------------------------


def _phase_matrix(entries, n=None) -> tuple:
    rows = tuple(tuple(e if isinstance(e, Phase) else Phase(Fraction(e)) for e in row) for row in entries)
    size = len(rows) if n is None else n
    if len(rows) != size or any(len(r) != size for r in rows):
        raise DimensionError(f"expected a {size}x{size} phase matrix")
    return rows


@dataclass(frozen=True)
class SkewMatrix:
    """Multiplicatively antisymmetric matrix: ``q_ii = 1`` and ``q_ji = 1/q_ij``."""

    entries: tuple

    def __post_init__(self):
        rows = _phase_matrix(self.entries)
        object.__setattr__(self, "entries", rows)
        for i, row in enumerate(rows):
            if not row[i].is_one:
                raise ValueError(f"q[{i}][{i}] must be 1")
            for j in range(i):
                if rows[j][i] != row[j].inverse():
                    raise ValueError(f"q[{j}][{i}] is not the inverse of q[{i}][{j}]")

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij) -> Phase:
        i, j = ij
        return self.entries[i][j]

    @classmethod
    def trivial(cls, n: int) -> "SkewMatrix":
        return cls(tuple(tuple(Phase() for _ in range(n)) for _ in range(n)))

    @classmethod
    def from_upper(cls, n: int, upper: dict) -> "SkewMatrix":
        """Build from ``{(i, j): angle}`` for ``i < j``; the rest is implied."""
        rows = [[Phase() for _ in range(n)] for _ in range(n)]
        for (i, j), a in upper.items():
            p = a if isinstance(a, Phase) else Phase(Fraction(a))
            rows[i][j], rows[j][i] = p, p.inverse()
        return cls(tuple(map(tuple, rows)))

    def __str__(self):
        return "\n".join(" ".join(str(p) for p in row) for row in self.entries)


@dataclass(frozen=True)
class Bicharacter:
    """Alternating bicharacter on Z^n, given by its values on basis pairs."""

    values: tuple

    def __post_init__(self):
        rows = _phase_matrix(self.values)
        object.__setattr__(self, "values", rows)
        for i, row in enumerate(rows):
            if not row[i].is_one:
                raise ValueError(f"chi(e{i}, e{i}) must be 1")
            for j in range(i):
                if (rows[j][i] * row[j]) != Phase():
                    raise ValueError(f"chi is not alternating on ({j}, {i})")

    @property
    def n(self) -> int:
        return len(self.values)

    def __call__(self, alpha: Sequence[int], beta: Sequence[int]) -> Phase:
        if len(alpha) != self.n or len(beta) != self.n:
            raise DimensionError(f"gradings must have length {self.n}")
        angle = Fraction(0)
        for i, a in enumerate(alpha):
            if a:
                row = self.values[i]
                for j, b in enumerate(beta):
                    if b:
                        angle += a * b * row[j].angle
        return Phase(angle)

    @classmethod
    def trivial(cls, n: int) -> "Bicharacter":
        return cls(SkewMatrix.trivial(n).entries)

    @classmethod
    def from_upper(cls, n: int, upper: dict) -> "Bicharacter":
        return cls(SkewMatrix.from_upper(n, upper).entries)

    @classmethod
    def square_root_of(cls, q: SkewMatrix) -> "Bicharacter":
        """Alternating ``chi`` with ``chi(e_i, e_j)^2 = q_ij``, halving angles above the diagonal."""
        upper = {}
        for i in range(q.n):
            for j in range(i + 1, q.n):
                upper[(i, j)] = Phase(q[i, j].angle / 2)
        return cls.from_upper(q.n, upper)


def involutive_q(n: int) -> SkewMatrix:
    """Symmetric ±1 matrix with unit diagonal, off-diagonal signs from a negated
    Sylvester matrix: ``q_ij = -(-1)^popcount(i & j)`` for ``i != j``."""
    if n < 1:
        raise ValueError("n must be positive")
    half = Phase(1, 2)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            if i == j:
                row.append(Phase())
            else:
                sylvester_negative = bin(i & j).count("1") % 2 == 1
                row.append(Phase() if sylvester_negative else half)
        rows.append(tuple(row))
    return SkewMatrix(tuple(rows))


# ---------------------------------------------------------------------------
# Elements
# ---------------------------------------------------------------------------


def _monomial_phase(a: tuple, b: tuple, q: SkewMatrix) -> Fraction:
    """Angle picked up by ``x^a x^b -> x^(a+b)`` for normal-ordered ``a``, ``b``."""
    angle = Fraction(0)
    for i, ai in enumerate(a):
        if ai:
            row = q.entries[i]
            for j in range(i):
                if b[j]:
                    angle += ai * b[j] * row[j].angle
    return angle


class SkewElement:
    """Element of the quantum torus: normal-ordered Laurent monomial -> coefficient."""

    __slots__ = ("q", "terms")

    def __init__(self, q: SkewMatrix, terms: dict | None = None):
        self.q = q
        clean = {}
        for m, c in (terms or {}).items():
            m = tuple(m)
            if len(m) != q.n:
                raise DimensionError(f"monomial {m} has wrong length for {q.n} generators")
            c = Cyclotomic.coerce(c)
            if m in clean:
                c = clean[m] + c
            if c:
                clean[m] = c
            else:
                clean.pop(m, None)
        self.terms = clean

    @classmethod
    def generator(cls, q: SkewMatrix, i: int, exponent: int = 1) -> "SkewElement":
        return cls(q, {tuple(exponent if k == i else 0 for k in range(q.n)): 1})

    @classmethod
    def one(cls, q: SkewMatrix) -> "SkewElement":
        return cls(q, {(0,) * q.n: 1})

    @classmethod
    def from_polynomial(cls, f: Polynomial, q: SkewMatrix) -> "SkewElement":
        return cls(q, dict(f.terms))

    def to_polynomial(self, ring: PolyRing | None = None) -> Polynomial:
        ring = ring or PolyRing(self.q.n, QQ)
        terms = {}
        for m, c in self.terms.items():
            if set(c.terms) - {Fraction(0)}:
                raise ValueError("coefficient is not rational")
            terms[m] = c.terms.get(Fraction(0), 0)
        return Polynomial(ring, terms)

    def _check(self, other):
        if not isinstance(other, SkewElement):
            return SkewElement(self.q, {(0,) * self.q.n: other})
        if other.q != self.q:
            raise DimensionError("elements of different quantum tori")
        return other

    def __add__(self, other):
        other = self._check(other)
        merged = dict(self.terms)
        for m, c in other.terms.items():
            merged[m] = merged[m] + c if m in merged else c
        return SkewElement(self.q, merged)

    def __neg__(self):
        return SkewElement(self.q, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, SkewElement):
            return twist_product(self, other, None)
        return SkewElement(self.q, {m: c * Cyclotomic.coerce(other) for m, c in self.terms.items()})

    def __rmul__(self, other):
        return self * other

    def __eq__(self, other):
        if not isinstance(other, SkewElement):
            return NotImplemented
        if self.q != other.q or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[m] == other.terms[m] for m in self.terms)

    __hash__ = None

    def coefficient(self, mono) -> Cyclotomic:
        return self.terms.get(tuple(mono), Cyclotomic())

    def term_phase(self, mono):
        """``(rational, Phase)`` form of a coefficient when it is a scaled root of unity."""
        return self.coefficient(mono).scaled_phase()

    def format(self, names=None) -> str:
        if not self.terms:
            return "0"
        names = names or [f"x{i + 1}" for i in range(self.q.n)]
        parts = []
        for m in sorted(self.terms, reverse=True):
            mono = "*".join(
                n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
            )
            c = str(self.terms[m])
            if not mono:
                parts.append(c)
            elif c == "1":
                parts.append(mono)
            elif c == "-1":
                parts.append("-" + mono)
            elif " + " in c:
                parts.append(f"({c})*{mono}")
            else:
                parts.append(f"{c}*{mono}")
        return " + ".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"SkewElement({self.format()})"


def skew_normal_form(word: Sequence, q: SkewMatrix, rng: random.Random | None = None) -> SkewElement:
    """Normal-order a word of generator powers by adjacent transpositions.

    ``word`` is a sequence of ``(index, exponent)`` pairs (a bare index means
    exponent 1). Each swap of ``x_j^a x_i^b`` with ``j > i`` contributes
    ``q_ji^(a*b)``. With ``rng`` the out-of-order pair swapped at each step is
    chosen at random; the result does not depend on the schedule.
    """
    letters = []
    for item in word:
        i, e = (item, 1) if isinstance(item, int) else item
        if not 0 <= i < q.n:
            raise DimensionError(f"generator index {i} out of range")
        letters.append((i, e))
    angle = Fraction(0)
    while True:
        inversions = [k for k in range(len(letters) - 1) if letters[k][0] > letters[k + 1][0]]
        if not inversions:
            break
        k = rng.choice(inversions) if rng is not None else inversions[0]
        (j, a), (i, b) = letters[k], letters[k + 1]
        angle += a * b * q[j, i].angle
        letters[k], letters[k + 1] = letters[k + 1], letters[k]
    exps = [0] * q.n
    for i, e in letters:
        exps[i] += e
    return SkewElement(q, {tuple(exps): Cyclotomic(Phase(angle))})


def _grading(mono, gradings):
    if gradings is None:
        return mono
    r = len(gradings[0])
    out = [0] * r
    for e, g in zip(mono, gradings):
        if e:
            for k in range(r):
                out[k] += e * g[k]
    return tuple(out)


def _check_gradings(n, gradings, chi):
    if gradings is None:
        if chi is not None and chi.n != n:
            raise DimensionError(f"bicharacter rank {chi.n} != generator count {n}")
        return None
    gradings = [tuple(g) for g in gradings]
    if len(gradings) != n:
        raise DimensionError(f"need {n} gradings, got {len(gradings)}")
    if chi is not None and any(len(g) != chi.n for g in gradings):
        raise DimensionError(f"gradings must have length {chi.n}")
    return gradings


def twist_product(
    a: SkewElement, b: SkewElement, chi: Bicharacter | None, gradings=None
) -> SkewElement:
    """``a * b``: skew product of every term pair scaled by ``chi(deg, deg)``.

    ``gradings[i]`` is the degree of generator ``i`` (default: the unit vector);
    ``chi=None`` gives the plain quantum-torus product.
    """
    if a.q != b.q:
        raise DimensionError("elements of different quantum tori")
    q = a.q
    gradings = _check_gradings(q.n, gradings, chi)
    out = {}
    for ma, ca in a.terms.items():
        ga = _grading(ma, gradings) if chi is not None else None
        for mb, cb in b.terms.items():
            angle = _monomial_phase(ma, mb, q)
            if chi is not None:
                angle += chi(ga, _grading(mb, gradings)).angle
            m = tuple(x + y for x, y in zip(ma, mb))
            c = ca * cb * Cyclotomic(Phase(angle))
            out[m] = out[m] + c if m in out else c
    return SkewElement(q, out)


def _scalar(e: SkewElement) -> Cyclotomic:
    (c,) = e.terms.values()
    return c


def faithfulness_defect(i: int, j: int, q: SkewMatrix, chi: Bicharacter, gradings=None) -> Phase:
    """Phase ratio of the normal forms of ``x_i * x_j`` and ``x_j * x_i``.

    Equals ``chi(e_i, e_j) / chi(e_j, e_i) * q_ij`` for unit gradings; the
    twisted product commutes on the pair exactly when this is 1.
    """
    if i == j:
        raise InvalidPairError("defect needs two distinct generators")
    xi, xj = SkewElement.generator(q, i), SkewElement.generator(q, j)
    lhs = _scalar(twist_product(xi, xj, chi, gradings))
    rhs = _scalar(twist_product(xj, xi, chi, gradings))
    ratio = (lhs * rhs.inverse()).as_phase()
    assert ratio is not None
    return ratio


def braid_check(n: int, gradings, q: SkewMatrix, chi: Bicharacter) -> CheckReport:
    """Check the braid relations on generators at the level of scalars.

    Adjacent pairs compare the coefficients of ``x_i*x_{i+1}*x_i`` and
    ``x_{i+1}*x_i*x_{i+1}``; pairs with ``|i-j| > 1`` must have trivial
    faithfulness defect. Reports use 1-based generator names.
    """
    if n < 2:
        raise ValueError("need at least two generators")
    if q.n != n:
        raise DimensionError(f"q is {q.n}x{q.n}, expected {n}x{n}")
    gradings = _check_gradings(n, gradings, chi)
    report = CheckReport()
    gen = [SkewElement.generator(q, i) for i in range(n)]

    def star(*xs):
        acc = xs[0]
        for x in xs[1:]:
            acc = twist_product(acc, x, chi, gradings)
        return acc

    for i in range(n - 1):
        a, b = gen[i], gen[i + 1]
        lhs, rhs = _scalar(star(a, b, a)), _scalar(star(b, a, b))
        name = f"x{i + 1}*x{i + 2}*x{i + 1} = x{i + 2}*x{i + 1}*x{i + 2}"
        report.add(name, lhs == rhs, f"{lhs} vs {rhs}", (i, i + 1))
    for i in range(n):
        for j in range(i + 2, n):
            d = faithfulness_defect(i, j, q, chi, gradings)
            report.add(f"x{i + 1}*x{j + 1} = x{j + 1}*x{i + 1}", d.is_one, f"defect {d}", (i, j))
    return report
