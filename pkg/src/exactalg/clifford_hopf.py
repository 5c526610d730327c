"""Grassmann, Clifford and Clifford-Hopf algebra arithmetic.

Clifford elements are linear combinations of blades: strictly increasing
tuples of 0-based generator indices. Words are rewritten with

    e_j e_i = 2*eta_ij - e_i e_j   (j > i),     e_i e_i = eta_ii

so non-diagonal forms are handled as well as diagonal ones.

The Clifford-Hopf algebra on ``D`` has odd generators ``G_0 .. G_{D-1}``,
the extra generator ``G_D`` (squaring to 1) and central ``E_0 .. E_{D-1}``
with ``G_i^2 = E_i`` and all distinct ``G`` anticommuting. Its coproduct,
antipode and counit are extended from generators; the antipode reverses
products.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Sequence

from .errors import DimensionError
from .reports import CheckReport


# ---------------------------------------------------------------------------
# Clifford / Grassmann
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Signature:
    """Symmetric bilinear form ``eta`` on ``D`` generators."""

    eta: tuple

    def __post_init__(self):
        rows = tuple(tuple(Fraction(e) for e in row) for row in self.eta)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError("eta must be square")
        for i in range(n):
            for j in range(i):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"eta is not symmetric at ({j}, {i})")
        object.__setattr__(self, "eta", rows)

    @property
    def D(self) -> int:
        return len(self.eta)

    @classmethod
    def zero(cls, D: int) -> "Signature":
        return cls(tuple((0,) * D for _ in range(D)))

    @classmethod
    def diagonal(cls, diag: Sequence) -> "Signature":
        D = len(diag)
        return cls(tuple(tuple(diag[i] if i == j else 0 for j in range(D)) for i in range(D)))

    @property
    def is_zero(self) -> bool:
        return not any(any(r) for r in self.eta)


@lru_cache(maxsize=4096)
def _reduce_word(word: tuple, sig: Signature) -> tuple:
    """Rewrite a word of generator indices into ``((blade, coeff), ...)``."""
    for k in range(len(word) - 1):
        a, b = word[k], word[k + 1]
        if a == b:
            inner = _reduce_word(word[:k] + word[k + 2:], sig)
            c = sig.eta[a][a]
            return tuple((bl, v * c) for bl, v in inner) if c else ()
        if a > b:
            acc = {}
            c = 2 * sig.eta[a][b]
            if c:
                for bl, v in _reduce_word(word[:k] + word[k + 2:], sig):
                    acc[bl] = acc.get(bl, 0) + v * c
            for bl, v in _reduce_word(word[:k] + (b, a) + word[k + 2:], sig):
                acc[bl] = acc.get(bl, 0) - v
            return tuple((bl, v) for bl, v in acc.items() if v)
    return ((word, Fraction(1)),)


class CliffordElement:
    """Linear combination of reduced blades over Q."""

    __slots__ = ("sig", "terms")

    def __init__(self, sig: Signature, terms: dict | None = None):
        self.sig = sig
        clean = {}
        for blade, c in (terms or {}).items():
            blade = tuple(blade)
            if any(b <= a for a, b in zip(blade, blade[1:])):
                raise ValueError(f"blade {blade} is not strictly increasing")
            if blade and not 0 <= blade[-1] < sig.D or blade and blade[0] < 0:
                raise DimensionError(f"blade {blade} out of range for D={sig.D}")
            c = Fraction(c)
            if c:
                clean[blade] = clean.get(blade, 0) + c
        self.terms = {b: c for b, c in clean.items() if c}

    @classmethod
    def blade(cls, sig: Signature, indices: Sequence[int], coeff=1) -> "CliffordElement":
        """Reduced form of the product ``e_{i1} e_{i2} ...`` in the given order."""
        return cls(sig, {b: v * Fraction(coeff) for b, v in _reduce_word(tuple(indices), sig)})

    @classmethod
    def scalar(cls, sig: Signature, c) -> "CliffordElement":
        return cls(sig, {(): c})

    def __add__(self, other):
        other = self._check(other)
        merged = dict(self.terms)
        for b, c in other.terms.items():
            merged[b] = merged.get(b, 0) + c
        return CliffordElement(self.sig, merged)

    __radd__ = __add__

    def __neg__(self):
        return CliffordElement(self.sig, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CliffordElement(self.sig, {b: c * other for b, c in self.terms.items()})
        return clifford_product(self, other)

    def __rmul__(self, other):
        return self * other

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CliffordElement.scalar(self.sig, other)
        if other.sig != self.sig:
            raise DimensionError("elements of different Clifford algebras")
        return other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CliffordElement.scalar(self.sig, other)
        if not isinstance(other, CliffordElement):
            return NotImplemented
        return self.sig == other.sig and self.terms == other.terms

    __hash__ = None

    def grade_parts(self) -> dict:
        out = {}
        for b, c in self.terms.items():
            out.setdefault(len(b), {})[b] = c
        return out

    def format(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for b in sorted(self.terms, key=lambda b: (len(b), b)):
            c = self.terms[b]
            name = "*".join(f"e{i + 1}" for i in b)
            if not name:
                s = str(c)
            elif c == 1:
                s = name
            elif c == -1:
                s = "-" + name
            else:
                s = f"{c}*{name}"
            if parts:
                parts.append(" - " + s[1:] if s.startswith("-") else " + " + s)
            else:
                parts.append(s)
        return "".join(parts)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CliffordElement({self.format()})"


def clifford_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    if a.sig != b.sig:
        raise DimensionError("elements of different Clifford algebras")
    acc = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            for bl, v in _reduce_word(ba + bb, a.sig):
                acc[bl] = acc.get(bl, 0) + ca * cb * v
    return CliffordElement(a.sig, acc)


def _wedge_blades(a: tuple, b: tuple):
    """Sign and blade of ``a ∧ b`` by counting inversions; ``None`` if they overlap."""
    if set(a) & set(b):
        return None
    inversions = sum(1 for x in a for y in b if x > y)
    return (-1) ** inversions, tuple(sorted(a + b))


def grassmann_product(a: CliffordElement, b: CliffordElement) -> CliffordElement:
    """Exterior product; the signature is ignored (treated as zero)."""
    if a.sig.D != b.sig.D:
        raise DimensionError("elements of different exterior algebras")
    acc = {}
    for ba, ca in a.terms.items():
        for bb, cb in b.terms.items():
            w = _wedge_blades(ba, bb)
            if w is not None:
                sign, bl = w
                acc[bl] = acc.get(bl, 0) + sign * ca * cb
    return CliffordElement(Signature.zero(a.sig.D), acc)


def left_contract(i: int, a: CliffordElement) -> CliffordElement:
    """Interior derivative along the dual of ``e_i`` on the exterior algebra.

    Together with ``e_i ∧`` it satisfies ``d_i (e_j ∧ x) + e_j ∧ (d_i x) = delta_ij x``.
    """
    acc = {}
    for b, c in a.terms.items():
        if i in b:
            pos = b.index(i)
            bl = b[:pos] + b[pos + 1:]
            acc[bl] = acc.get(bl, 0) + (-1) ** pos * c
    return CliffordElement(Signature.zero(a.sig.D), acc)


def basis_dimension(D: int, sig: Signature | None = None) -> int:
    """Number of distinct blades reachable from 1 by multiplying with generators."""
    if D < 0:
        raise ValueError("D must be nonnegative")
    sig = sig if sig is not None else Signature.zero(D)
    if sig.D != D:
        raise DimensionError(f"signature has D={sig.D}, expected {D}")
    seen = {()}
    frontier = [()]
    while frontier:
        nxt = []
        for bl in frontier:
            for i in range(D):
                for side in ((i,) + bl, bl + (i,)):
                    for red, _ in _reduce_word(side, sig):
                        if red not in seen:
                            seen.add(red)
                            nxt.append(red)
        frontier = nxt
    return len(seen)


# ---------------------------------------------------------------------------
# Clifford-Hopf algebra
# ---------------------------------------------------------------------------

# basis label: (E exponents, G word over 0..D-1, gamma bit for G_D)


def _clh_mul_labels(x: tuple, y: tuple):
    (ea, wa, ga), (eb, wb, gb) = x, y
    sign = -1 if ga and len(wb) % 2 else 1
    inversions = sum(1 for p in wa for r in wb if p > r)
    if inversions % 2:
        sign = -sign
    common = set(wa) & set(wb)
    e = tuple(a + b + (1 if i in common else 0) for i, (a, b) in enumerate(zip(ea, eb)))
    w = tuple(sorted(set(wa) ^ set(wb)))
    return sign, (e, w, (ga + gb) % 2)


class CLHElement:
    """Element of the Clifford-Hopf algebra in the basis ``E^a G_w G_D^gamma``."""

    __slots__ = ("D", "terms")

    def __init__(self, D: int, terms: dict | None = None):
        self.D = D
        clean = {}
        for (e, w, g), c in (terms or {}).items():
            e, w, g = tuple(e), tuple(w), int(g)
            if len(e) != D or any(x < 0 for x in e):
                raise DimensionError(f"E exponents {e} invalid for D={D}")
            if any(b <= a for a, b in zip(w, w[1:])) or any(not 0 <= i < D for i in w):
                raise ValueError(f"G word {w} is not a reduced word for D={D}")
            if g not in (0, 1):
                raise ValueError("gamma must be 0 or 1")
            c = Fraction(c)
            key = (e, w, g)
            clean[key] = clean.get(key, 0) + c
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def one(cls, D):
        return cls(D, {((0,) * D, (), 0): 1})

    @classmethod
    def E(cls, D, i):
        return cls(D, {(tuple(int(k == i) for k in range(D)), (), 0): 1})

    @classmethod
    def G(cls, D, i):
        """``G_i`` for ``0 <= i < D``; ``i == D`` gives the extra generator."""
        if i == D:
            return cls(D, {((0,) * D, (), 1): 1})
        return cls(D, {((0,) * D, (i,), 0): 1})

    def __add__(self, other):
        other = self._check(other)
        merged = dict(self.terms)
        for k, c in other.terms.items():
            merged[k] = merged.get(k, 0) + c
        return CLHElement(self.D, merged)

    def __neg__(self):
        return CLHElement(self.D, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CLHElement(self.D, {k: c * other for k, c in self.terms.items()})
        other = self._check(other)
        acc = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                s, lab = _clh_mul_labels(x, y)
                acc[lab] = acc.get(lab, 0) + s * cx * cy
        return CLHElement(self.D, acc)

    def __rmul__(self, other):
        return self * other

    def _check(self, other):
        if isinstance(other, (int, Fraction)):
            return CLHElement.one(self.D) * other
        if other.D != self.D:
            raise DimensionError("elements for different D")
        return other

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = CLHElement.one(self.D) * other
        if not isinstance(other, CLHElement):
            return NotImplemented
        return self.D == other.D and self.terms == other.terms

    __hash__ = None

    def format(self) -> str:
        return _format_sum(self.terms, _label_name)

    def __str__(self):
        return self.format()

    def __repr__(self):
        return f"CLHElement({self.format()})"


def _label_name(label) -> str:
    e, w, g = label
    D = len(e)
    parts = []
    for i, k in enumerate(e):
        if k:
            parts.append(f"E{i + 1}" if k == 1 else f"E{i + 1}^{k}")
    parts += [f"G{i + 1}" for i in w]
    if g:
        parts.append(f"G{D + 1}")
    return "*".join(parts)


def _format_sum(terms, namer) -> str:
    if not terms:
        return "0"
    parts = []
    for k in sorted(terms):
        c = terms[k]
        name = namer(k)
        if not name or name == "1":
            s = str(c)
        elif c == 1:
            s = name
        elif c == -1:
            s = "-" + name
        else:
            s = f"{c}*{name}"
        if parts:
            parts.append(" - " + s[1:] if s.startswith("-") else " + " + s)
        else:
            parts.append(s)
    return "".join(parts)


class CLHTensor:
    """Element of the tensor square, multiplied componentwise: ``(a⊗b)(c⊗d) = ac⊗bd``."""

    __slots__ = ("D", "terms")

    def __init__(self, D: int, terms: dict | None = None):
        self.D = D
        clean = {}
        for k, c in (terms or {}).items():
            clean[k] = clean.get(k, 0) + Fraction(c)
        self.terms = {k: c for k, c in clean.items() if c}

    @classmethod
    def pure(cls, a: CLHElement, b: CLHElement) -> "CLHTensor":
        acc = {}
        for x, cx in a.terms.items():
            for y, cy in b.terms.items():
                acc[(x, y)] = acc.get((x, y), 0) + cx * cy
        return cls(a.D, acc)

    def __add__(self, other):
        merged = dict(self.terms)
        for k, c in other.terms.items():
            merged[k] = merged.get(k, 0) + c
        return CLHTensor(self.D, merged)

    def __neg__(self):
        return CLHTensor(self.D, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CLHTensor(self.D, {k: c * other for k, c in self.terms.items()})
        acc = {}
        for (x1, x2), c in self.terms.items():
            for (y1, y2), d in other.terms.items():
                s1, l1 = _clh_mul_labels(x1, y1)
                s2, l2 = _clh_mul_labels(x2, y2)
                acc[(l1, l2)] = acc.get((l1, l2), 0) + s1 * s2 * c * d
        return CLHTensor(self.D, acc)

    def __eq__(self, other):
        if not isinstance(other, CLHTensor):
            return NotImplemented
        return self.D == other.D and self.terms == other.terms

    __hash__ = None

    def format(self) -> str:
        def namer(k):
            a, b = _label_name(k[0]) or "1", _label_name(k[1]) or "1"
            return f"{a}⊗{b}"

        return _format_sum(self.terms, namer)

    def __str__(self):
        return self.format()


def _coproduct_gen(D, kind, i) -> CLHTensor:
    one = CLHElement.one(D)
    if kind == "E":
        e = CLHElement.E(D, i)
        return CLHTensor.pure(e, one) + CLHTensor.pure(one, e)
    if i == D:
        g = CLHElement.G(D, D)
        return CLHTensor.pure(g, g)
    return CLHTensor.pure(CLHElement.G(D, i), one) + CLHTensor.pure(CLHElement.G(D, D), CLHElement.G(D, i))


def _antipode_gen(D, kind, i) -> CLHElement:
    if kind == "E":
        return -CLHElement.E(D, i)
    if i == D:
        return CLHElement.G(D, D)
    return CLHElement.G(D, i) * CLHElement.G(D, D)


def _label_factors(label):
    """Generator factors of a basis label, in product order."""
    e, w, g = label
    D = len(e)
    out = [("E", i) for i, k in enumerate(e) for _ in range(k)]
    out += [("G", i) for i in w]
    if g:
        out.append(("G", D))
    return out


def clh_apply(map_name: str, x: CLHElement):
    """Apply ``coproduct``, ``antipode`` or ``counit`` to ``x``."""
    D = x.D
    if map_name == "counit":
        total = Fraction(0)
        for (e, w, g), c in x.terms.items():
            if not any(e) and not w:
                total += c
        return total
    if map_name == "coproduct":
        out = CLHTensor(D)
        for label, c in x.terms.items():
            acc = CLHTensor.pure(CLHElement.one(D), CLHElement.one(D))
            for kind, i in _label_factors(label):
                acc = acc * _coproduct_gen(D, kind, i)
            out = out + acc * c
        return out
    if map_name == "antipode":
        out = CLHElement(D)
        for label, c in x.terms.items():
            acc = CLHElement.one(D)
            for kind, i in reversed(_label_factors(label)):
                acc = acc * _antipode_gen(D, kind, i)
            out = out + acc * c
        return out
    raise ValueError(f"unknown map {map_name!r}")


def clh_morphism_check(D: int) -> CheckReport:
    """Verify the defining relations survive coproduct, counit and antipode.

    Also checks the counit and antipode axioms on every generator.
    """
    if D < 1:
        raise ValueError("D must be at least 1")
    report = CheckReport()
    one = CLHElement.one(D)
    G = [CLHElement.G(D, i) for i in range(D + 1)]
    E = [CLHElement.E(D, i) for i in range(D)]
    gname = [f"G{i + 1}" for i in range(D + 1)]
    ename = [f"E{i + 1}" for i in range(D)]

    # the relations hold in the algebra itself
    for i in range(D):
        report.add(f"{gname[i]}^2 = {ename[i]}", G[i] * G[i] == E[i])
    report.add(f"{gname[D]}^2 = 1", G[D] * G[D] == one)

    maps = {
        "Δ": (lambda x: clh_apply("coproduct", x), CLHTensor.pure(one, one), CLHTensor(D)),
        "ε": (lambda x: clh_apply("counit", x), Fraction(1), Fraction(0)),
        "S": (lambda x: clh_apply("antipode", x), one, CLHElement(D)),
    }
    for mname, (f, unit, zero) in maps.items():
        fg = [f(g) for g in G]
        fe = [f(e) for e in E]
        # S reverses products, so relations are tested with reversed factors
        mul = (lambda a, b: b * a) if mname == "S" else (lambda a, b: a * b)
        for i in range(D):
            report.add(f"{mname}({gname[i]})^2 = {mname}({ename[i]})", mul(fg[i], fg[i]) == fe[i])
        report.add(f"{mname}({gname[D]})^2 = 1", mul(fg[D], fg[D]) == unit)
        for i in range(D + 1):
            for j in range(i + 1, D + 1):
                anti = mul(fg[i], fg[j]) + mul(fg[j], fg[i])
                report.add(f"{{{mname}({gname[i]}), {mname}({gname[j]})}} = 0", anti == zero)
        for i in range(D):
            for k, other in enumerate(fg + fe):
                label = (gname + ename)[k]
                comm = mul(fe[i], other) - mul(other, fe[i])
                report.add(f"[{mname}({ename[i]}), {mname}({label})] = 0", comm == zero)

    # counit and antipode axioms on generators
    for name, x in zip(gname + ename, G + E):
        dx = clh_apply("coproduct", x)
        left = CLHElement(D)
        right = CLHElement(D)
        m_s = CLHElement(D)
        for (a, b), c in dx.terms.items():
            ea = clh_apply("counit", CLHElement(D, {a: 1}))
            eb = clh_apply("counit", CLHElement(D, {b: 1}))
            left = left + CLHElement(D, {b: c * ea})
            right = right + CLHElement(D, {a: c * eb})
            m_s = m_s + clh_apply("antipode", CLHElement(D, {a: c})) * CLHElement(D, {b: 1})
        report.add(f"(ε⊗id)Δ({name}) = {name}", left == x)
        report.add(f"(id⊗ε)Δ({name}) = {name}", right == x)
        report.add(f"m(S⊗id)Δ({name}) = ε({name})", m_s == one * clh_apply("counit", x))
    return report
