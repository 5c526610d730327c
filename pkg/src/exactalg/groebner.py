"""Buchberger's algorithm with the normal selection strategy.

Pairs are pruned with the Gebauer-Moeller installation of Buchberger's two
criteria (coprime leading monomials, chain criterion). The result is always
the reduced, monic basis sorted by decreasing leading monomial, so two ideals
are equal iff their bases compare equal.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import DimensionError, UndefinedLeadingTermError, UnsupportedRingError
from .poly import (
    MonomialOrder,
    Polynomial,
    PolyRing,
    divide,
    mono_coprime,
    mono_divides,
    mono_lcm,
)


class Ideal:
    """An ideal given by generators; zero generators are dropped.

    Reduced bases are memoised per monomial order. The memo is write-once per
    order, so concurrent readers see either nothing or the final basis.
    """

    def __init__(self, generators: Iterable[Polynomial], ring: PolyRing | None = None):
        gens = list(generators)
        if ring is None:
            if not gens:
                raise ValueError("ring is required for an ideal without generators")
            ring = gens[0].ring
        for g in gens:
            if g.ring != ring:
                raise DimensionError("generator from a different ring")
        self.ring = ring
        self.generators = tuple(g for g in gens if g)
        self._cache: dict = {}
        self._lock = threading.Lock()

    @classmethod
    def parse(cls, ring: PolyRing, *texts: str) -> "Ideal":
        return cls([ring(t) for t in texts], ring)

    @property
    def is_zero(self) -> bool:
        return not self.generators

    def groebner(self, order: MonomialOrder) -> "GroebnerBasis":
        return buchberger(self, order)

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.generators)) or '0'})"


@dataclass
class GroebnerBasis:
    elements: tuple
    order: MonomialOrder
    ring: PolyRing
    # cofactors[i][j]: coefficient of input generator j in elements[i]
    cofactors: tuple | None = field(default=None, compare=False, repr=False)

    def __iter__(self):
        return iter(self.elements)

    def __len__(self):
        return len(self.elements)

    def __getitem__(self, i):
        return self.elements[i]

    def reduce(self, f: Polynomial) -> Polynomial:
        if not self.elements:
            return f
        return divide(f, self.elements, self.order)[1]

    @property
    def leading_monomials(self) -> list:
        return [g.leading_term(self.order)[0] for g in self.elements]

    def is_unit(self) -> bool:
        return len(self.elements) == 1 and self.elements[0].is_constant()

    def to_ideal(self) -> Ideal:
        ideal = Ideal(self.elements, self.ring)
        ideal._cache[self.order] = self
        return ideal

    def format(self) -> list:
        return [g.format(self.order) for g in self.elements]


def s_polynomial(f: Polynomial, g: Polynomial, order: MonomialOrder) -> Polynomial:
    """``(L/LT(f))*f - (L/LT(g))*g`` with ``L`` the lcm of the leading monomials."""
    if not f or not g:
        raise UndefinedLeadingTermError("S-polynomial of the zero polynomial")
    (mf, cf), (mg, cg) = f.leading_term(order), g.leading_term(order)
    lcm = mono_lcm(mf, mg)
    one = f.ring.field(1)
    return f.mul_term(tuple(a - b for a, b in zip(lcm, mf)), one / cf) - g.mul_term(
        tuple(a - b for a, b in zip(lcm, mg)), one / cg
    )


def _check_nonlaurent(polys):
    for p in polys:
        if p.is_laurent:
            raise UnsupportedRingError("Groebner bases need nonnegative exponents")


class _Tracker:
    """Optional cofactor bookkeeping: each basis polynomial as a combination of inputs."""

    def __init__(self, ring, ngens, enabled):
        self.enabled = enabled
        self.ring = ring
        self.n = ngens

    def unit(self, j):
        if not self.enabled:
            return None
        return [self.ring.one() if k == j else self.ring.zero() for k in range(self.n)]

    def combine(self, terms):
        """Sum of ``poly * cofactor_vector`` for ``(poly, vec)`` in terms."""
        if not self.enabled:
            return None
        out = [self.ring.zero() for _ in range(self.n)]
        for p, vec in terms:
            for k in range(self.n):
                if vec[k]:
                    out[k] = out[k] + p * vec[k]
        return out


def _update(G, B, h, lm):
    """Gebauer-Moeller update. ``G``: active indices, ``B``: pairs, ``h``: new index."""
    mh = lm[h]
    C = [g for g in G]
    D = []
    while C:
        g1 = C.pop(0)
        l1 = mono_lcm(mh, lm[g1])
        if mono_coprime(mh, lm[g1]) or not any(
            mono_divides(mono_lcm(mh, lm[g2]), l1) for g2 in C + D
        ):
            D.append(g1)
    E = [(h, g) for g in D if not mono_coprime(mh, lm[g])]
    Bnew = []
    for g1, g2 in B:
        l12 = mono_lcm(lm[g1], lm[g2])
        if (
            mono_divides(mh, l12)
            and mono_lcm(lm[g1], mh) != l12
            and mono_lcm(mh, lm[g2]) != l12
        ):
            continue
        Bnew.append((g1, g2))
    Bnew.extend(E)
    Gnew = [g for g in G if not mono_divides(mh, lm[g])]
    Gnew.append(h)
    return Gnew, Bnew


def buchberger(I: Ideal, order: MonomialOrder, *, cofactors: bool = False) -> GroebnerBasis:
    """Reduced monic Groebner basis of ``I`` under ``order``.

    With ``cofactors=True`` every basis element also carries its expression
    in terms of ``I.generators`` (not cached).
    """
    if not cofactors and order in I._cache:
        return I._cache[order]
    ring = I.ring
    _check_nonlaurent(I.generators)
    gb = _buchberger(I.generators, ring, order, cofactors)
    if not cofactors:
        with I._lock:
            gb = I._cache.setdefault(order, gb)
    return gb


def _buchberger(gens: Sequence[Polynomial], ring, order, track) -> GroebnerBasis:
    tr = _Tracker(ring, len(gens), track)
    key = order.key
    polys, cofs, lm = [], [], []

    def add(p, cof):
        polys.append(p)
        cofs.append(cof)
        lm.append(p.leading_term(order)[0])
        return len(polys) - 1

    G, B = [], []
    for j, g in enumerate(gens):
        h = add(g, tr.unit(j))
        G, B = _update(G, B, h, lm)

    while B:
        # normal strategy: smallest lcm first, index pair breaks ties
        best = min(B, key=lambda p: (key(mono_lcm(lm[p[0]], lm[p[1]])), p))
        B.remove(best)
        i, j = best
        s = s_polynomial(polys[i], polys[j], order)
        active = [polys[g] for g in G]
        qs, r = divide(s, active, order)
        if not r:
            continue
        cof = None
        if track:
            (mi, ci), (mj, cj) = polys[i].leading_term(order), polys[j].leading_term(order)
            l = mono_lcm(mi, mj)
            one = ring.field(1)
            ti = ring.monomial([a - b for a, b in zip(l, mi)], one / ci)
            tj = ring.monomial([a - b for a, b in zip(l, mj)], one / cj)
            cof = tr.combine([(ti, cofs[i]), (-tj, cofs[j])] + [(-q, cofs[g]) for q, g in zip(qs, G)])
        h = add(r, cof)
        G, B = _update(G, B, h, lm)

    return _interreduce([polys[g] for g in G], [cofs[g] for g in G], ring, order, tr)


def _interreduce(basis, cofs, ring, order, tr) -> GroebnerBasis:
    # minimal basis: drop elements whose leading monomial is divisible by another's
    items = sorted(zip(basis, cofs), key=lambda t: order.key(t[0].leading_term(order)[0]))
    minimal = []
    for p, c in items:
        m = p.leading_term(order)[0]
        if not any(mono_divides(q.leading_term(order)[0], m) for q, _ in minimal):
            minimal.append((p, c))
    out = []
    for idx, (p, c) in enumerate(minimal):
        others = [q for k, (q, _) in enumerate(minimal) if k != idx]
        if others:
            qs, r = divide(p, others, order)
            if tr.enabled:
                oc = [cc for k, (_, cc) in enumerate(minimal) if k != idx]
                c = tr.combine([(ring.one(), c)] + [(-q, cc) for q, cc in zip(qs, oc)])
        else:
            r = p
        _, lc = r.leading_term(order)
        inv = ring.field(1) / lc
        out.append((r.scale(inv), tr.combine([(ring.constant(inv), c)]) if tr.enabled else None))
    out.sort(key=lambda t: order.key(t[0].leading_term(order)[0]), reverse=True)
    return GroebnerBasis(
        tuple(p for p, _ in out),
        order,
        ring,
        tuple(tuple(c) for _, c in out) if tr.enabled else None,
    )


def member(f: Polynomial, I: Ideal, order: MonomialOrder) -> bool:
    if f.ring != I.ring:
        raise DimensionError("polynomial and ideal live in different rings")
    if not f:
        return True
    gb = buchberger(I, order)
    return not gb.reduce(f)


def is_groebner(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    """Buchberger criterion: every S-polynomial reduces to zero modulo ``G``."""
    G = [g for g in G if g]
    for a in range(len(G)):
        for b in range(a + 1, len(G)):
            if divide(s_polynomial(G[a], G[b], order), G, order)[1]:
                return False
    return True


def is_reduced(G: Sequence[Polynomial], order: MonomialOrder) -> bool:
    lms = [g.leading_term(order) for g in G]
    for i, g in enumerate(G):
        if lms[i][1] != 1:
            return False
        for j, (m, _) in enumerate(lms):
            if i != j and any(mono_divides(m, t) for t in g.terms):
                return False
    return True


def same_ideal(I: Ideal, J: Ideal, order: MonomialOrder) -> bool:
    if I.ring != J.ring:
        raise DimensionError("ideals live in different rings")
    return buchberger(I, order).elements == buchberger(J, order).elements
