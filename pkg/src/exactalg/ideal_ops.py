"""Intersections, quotients and quotient-ring normal forms of polynomial ideals."""

from __future__ import annotations

from dataclasses import dataclass
from functools import reduce
from typing import Sequence

from .errors import DimensionError, InvalidDivisorError, InvariantViolation
from .groebner import Ideal, _check_nonlaurent, buchberger
from .poly import DEGREVLEX, MonomialOrder, Polynomial, PolyRing, _drl_key, divide


@dataclass(frozen=True)
class EliminationOrder:
    """Block order on ``base + extra`` variables with the extra block dominant.

    The extra (appended) variables are compared by degrevlex first; ties are
    broken by ``base`` on the original variables, so restricted to the base
    variables this is exactly ``base``.
    """

    nbase: int
    nextra: int
    base: MonomialOrder

    def key(self, m):
        return (_drl_key(m[self.nbase:]), self.base.key(m[: self.nbase]))

    @property
    def name(self):
        return f"elim({self.nextra};{self.base.name})"


@dataclass(frozen=True)
class TaggedRing:
    """A base ring with one elimination variable ``t`` appended last."""

    base: PolyRing
    order: MonomialOrder

    @property
    def ring(self) -> PolyRing:
        return self.base.extend(["_t"])

    @property
    def elimination_order(self) -> EliminationOrder:
        return EliminationOrder(self.base.nvars, 1, self.order)

    @property
    def t(self) -> Polynomial:
        return self.ring.gens[-1]

    def lift(self, f: Polynomial) -> Polynomial:
        return Polynomial._raw(self.ring, {m + (0,): c for m, c in f.terms.items()})

    @staticmethod
    def is_t_free(f: Polynomial) -> bool:
        return all(m[-1] == 0 for m in f.terms)

    def drop(self, f: Polynomial) -> Polynomial:
        return Polynomial._raw(self.base, {m[:-1]: c for m, c in f.terms.items()})


def _same_ring(*ideals):
    if len({I.ring for I in ideals}) > 1:
        raise DimensionError("ideals live in different rings")


def _reduced(gens, ring, order) -> Ideal:
    ideal = Ideal(gens, ring)
    buchberger(ideal, order)
    return ideal


def intersect(I: Ideal, J: Ideal, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """``I ∩ J`` as the t-free part of a basis of ``t*I + (1 - t)*J``."""
    _same_ring(I, J)
    _check_nonlaurent(I.generators + J.generators)
    if I.is_zero or J.is_zero:
        return Ideal([], I.ring)
    tr = TaggedRing(I.ring, order)
    t = tr.t
    gens = [t * tr.lift(f) for f in I.generators] + [(1 - t) * tr.lift(g) for g in J.generators]
    gb = buchberger(Ideal(gens, tr.ring), tr.elimination_order)
    kept = [tr.drop(g) for g in gb.elements if tr.is_t_free(g)]
    return _reduced(kept, I.ring, order)


def exact_quotient(g: Polynomial, f: Polynomial, order: MonomialOrder) -> Polynomial:
    (q,), r = divide(g, [f], order)
    if r:
        raise InvariantViolation(f"{f} does not divide {g}")
    return q


def quotient_by_poly(I: Ideal, f: Polynomial, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """``I : f`` from the generators of ``I ∩ <f>``, each divided by ``f``."""
    if f.ring != I.ring:
        raise DimensionError("polynomial and ideal live in different rings")
    if not f:
        raise InvalidDivisorError("quotient by the zero polynomial")
    inter = intersect(I, Ideal([f]), order)
    gens = [exact_quotient(g, f, order) for g in buchberger(inter, order)]
    return _reduced(gens, I.ring, order)


def quotient_by_ideal(I: Ideal, J: Ideal, order: MonomialOrder = DEGREVLEX) -> Ideal:
    """``I : J`` as the intersection of ``I : f`` over the generators ``f`` of ``J``."""
    _same_ring(I, J)
    if J.is_zero:
        raise InvalidDivisorError("quotient by the zero ideal")
    parts = [quotient_by_poly(I, f, order) for f in J.generators]
    return reduce(lambda a, b: intersect(a, b, order), parts)


def ideal_sum(ideals: Sequence[Ideal]) -> Ideal:
    _same_ring(*ideals)
    return Ideal([g for I in ideals for g in I.generators], ideals[0].ring)


def intersect_all(ideals: Sequence[Ideal], order: MonomialOrder = DEGREVLEX) -> Ideal:
    return reduce(lambda a, b: intersect(a, b, order), ideals)


def ideal_product(I: Ideal, J: Ideal) -> Ideal:
    _same_ring(I, J)
    return Ideal([f * g for f in I.generators for g in J.generators], I.ring)


def same_basis(I: Ideal, J: Ideal, order: MonomialOrder) -> bool:
    return buchberger(I, order).elements == buchberger(J, order).elements


def verify_quotient_identities(
    ideals: Sequence[Ideal], I: Ideal, order: MonomialOrder = DEGREVLEX
) -> bool:
    """Check both distributive laws of ideal quotients over intersections and sums.

    ``(∩ I_k) : I == ∩ (I_k : I)`` and ``I : (Σ I_k) == ∩ (I : I_k)``, by
    equality of reduced bases.
    """
    if not ideals:
        raise ValueError("need at least one ideal")
    _same_ring(I, *ideals)
    lhs1 = quotient_by_ideal(intersect_all(ideals, order), I, order)
    rhs1 = intersect_all([quotient_by_ideal(Ik, I, order) for Ik in ideals], order)
    lhs2 = quotient_by_ideal(I, ideal_sum(ideals), order)
    rhs2 = intersect_all([quotient_by_ideal(I, Ik, order) for Ik in ideals], order)
    return same_basis(lhs1, rhs1, order) and same_basis(lhs2, rhs2, order)


def quotient_ring_nf(f: Polynomial, I: Ideal, order: MonomialOrder = DEGREVLEX) -> Polynomial:
    """Canonical representative of ``f`` modulo ``I``."""
    if f.ring != I.ring:
        raise DimensionError("polynomial and ideal live in different rings")
    return buchberger(I, order).reduce(f)


def is_homogeneous(I: Ideal) -> bool:
    return all(g.is_homogeneous() for g in I.generators)
