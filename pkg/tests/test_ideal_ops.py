import pytest

from exactalg.errors import DimensionError, InvalidDivisorError
from exactalg.groebner import Ideal, buchberger, member
from exactalg.ideal_ops import (
    EliminationOrder,
    ideal_product,
    intersect,
    is_homogeneous,
    quotient_by_ideal,
    quotient_by_poly,
    quotient_ring_nf,
    same_basis,
    verify_quotient_identities,
)
from exactalg.poly import DEGREVLEX, LEX, PolyRing, compare_monomials

from helpers import binomial_ideal, monomial_ideal, ring, seeded, sympy_basis, to_sympy

R = PolyRing.from_names("x,y")


def basis(I, order=DEGREVLEX):
    return buchberger(I, order).format()


def test_intersection_of_coordinate_axes():
    assert basis(intersect(Ideal.parse(R, "x"), Ideal.parse(R, "y"))) == ["x*y"]


def test_intersection_with_zero_ideal_is_zero():
    assert intersect(Ideal.parse(R, "x"), Ideal([], R)).is_zero


def test_quotients_of_monomial_ideal():
    I = Ideal.parse(R, "x^2*y", "x*y^2")
    assert basis(quotient_by_poly(I, R("x*y"))) == ["x", "y"]
    assert basis(quotient_by_ideal(I, Ideal.parse(R, "x", "y"))) == ["x*y"]
    assert basis(quotient_by_ideal(Ideal.parse(R, "x"), Ideal.parse(R, "x"))) == ["1"]


def test_quotient_by_zero_rejected():
    with pytest.raises(InvalidDivisorError):
        quotient_by_poly(Ideal.parse(R, "x"), R.zero())
    with pytest.raises(InvalidDivisorError):
        quotient_by_ideal(Ideal.parse(R, "x"), Ideal([], R))


def test_ring_mismatch_rejected():
    S = PolyRing.from_names("u,v")
    with pytest.raises(DimensionError):
        intersect(Ideal.parse(R, "x"), Ideal.parse(S, "u"))


def test_quotient_ring_normal_form():
    assert quotient_ring_nf(R("x^2"), Ideal.parse(R, "x^2 - 1"), LEX) == R.one()


def test_elimination_order_restricts_to_base_order():
    elim = EliminationOrder(2, 1, LEX)
    for a, b in [((1, 0), (0, 3)), ((1, 1), (2, 0)), ((0, 2), (0, 1))]:
        s = compare_monomials(a, b, LEX)
        ka, kb = elim.key(a + (0,)), elim.key(b + (0,))
        assert (ka > kb) - (ka < kb) == s
    # any power of the extra variable dominates the base block
    assert elim.key((0, 0, 1)) > elim.key((5, 5, 0))


def test_intersection_matches_sympy_elimination():
    """Independent oracle: eliminate t from t*I + (1-t)*J with sympy's lex basis."""
    import sympy

    rng = seeded(21)
    for _ in range(8):
        Rn = ring(2)
        I, J = binomial_ideal(rng, Rn, 2), monomial_ideal(rng, Rn, 2)
        t = sympy.Symbol("t")
        syms = sympy.symbols(Rn.names)
        gens = [t * to_sympy(f)[0] for f in I.generators] + [(1 - t) * to_sympy(g)[0] for g in J.generators]
        G = sympy.groebner(gens, t, *syms, order="lex")
        kept = [g for g in G.exprs if t not in g.free_symbols]
        ours = intersect(I, J)
        oracle = sympy.groebner(kept, *syms, order="grevlex", domain="QQ")
        want = sympy_basis(Ideal([Rn(str(e).replace("**", "^")) for e in oracle.exprs], Rn), "drl")
        assert {frozenset(g.terms.items()) for g in buchberger(ours, DEGREVLEX)} == want


def test_quotient_containments():
    rng = seeded(8)
    for _ in range(10):
        Rn = ring(3)
        I, J = binomial_ideal(rng, Rn, 2), monomial_ideal(rng, Rn, 2)
        Q = quotient_by_ideal(I, J)
        assert all(member(g, Q, DEGREVLEX) for g in I.generators)
        assert all(member(g, I, DEGREVLEX) for g in ideal_product(J, Q).generators)


def test_quotient_identities_examples():
    I = Ideal.parse(R, "x", "y")
    parts = [Ideal.parse(R, "x^2*y"), Ideal.parse(R, "x*y^2 - y")]
    assert verify_quotient_identities(parts, I)


def test_same_basis_and_homogeneity():
    assert same_basis(Ideal.parse(R, "x*y"), Ideal.parse(R, "x*y", "x^2*y"), LEX)
    assert is_homogeneous(Ideal.parse(R, "x*y - y^2"))
    assert not is_homogeneous(Ideal.parse(R, "x - y^2"))
