"""Shared generators and an independent sympy oracle for the test suite."""

import random
from fractions import Fraction

import sympy

from exactalg.groebner import Ideal
from exactalg.poly import PolyRing, QQ


def ring(n, field=QQ):
    return PolyRing.from_names([f"x{i + 1}" for i in range(n)], field)


def random_poly(rng, R, d, nterms=3, coeffs=(-3, 3)):
    f = R.zero()
    for _ in range(nterms):
        e = [0] * R.nvars
        for _ in range(rng.randint(0, d)):
            e[rng.randrange(R.nvars)] += 1
        c = 0
        while c == 0:
            c = rng.randint(*coeffs)
        f = f + R.monomial(e, c)
    return f


def random_ideal(rng, R, d, ngens=None):
    ngens = ngens or rng.randint(1, 3)
    gens = []
    while len(gens) < ngens:
        g = random_poly(rng, R, d, rng.randint(1, 3))
        if g and not g.is_constant():
            gens.append(g)
    return Ideal(gens, R)


def random_monomial(rng, n, d):
    e = [0] * n
    for _ in range(rng.randint(1, d)):
        e[rng.randrange(n)] += 1
    return e


def monomial_ideal(rng, R, d, ngens=2):
    return Ideal([R.monomial(random_monomial(rng, R.nvars, d)) for _ in range(ngens)], R)


def binomial_ideal(rng, R, d, ngens=2):
    gens = []
    while len(gens) < ngens:
        a, b = random_monomial(rng, R.nvars, d), random_monomial(rng, R.nvars, d)
        if a != b:
            gens.append(R.monomial(a) - R.monomial(b))
    return Ideal(gens, R)


def seeded(seed):
    return random.Random(seed)


# sympy oracle ---------------------------------------------------------------


def to_sympy(f):
    syms = sympy.symbols(f.ring.names)
    expr = sympy.Integer(0)
    for m, c in f.terms.items():
        term = sympy.Rational(c.numerator, c.denominator)
        for s, e in zip(syms, m):
            term *= s**e
        expr += term
    return expr, syms


def sympy_basis(ideal, order_name):
    """Reduced basis from sympy as a set of {monomial: Fraction} dicts."""
    syms = sympy.symbols(ideal.ring.names)
    exprs = [to_sympy(g)[0] for g in ideal.generators]
    G = sympy.groebner(exprs, *syms, order={"lex": "lex", "drl": "grevlex"}[order_name], domain="QQ")
    out = set()
    for g in G.exprs:
        p = sympy.Poly(g, *syms)
        out.add(frozenset((m, Fraction(int(c.p), int(c.q))) for m, c in p.terms()))
    return out


def as_termsets(basis):
    return {frozenset(g.terms.items()) for g in basis}
