import cmath
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from exactalg.errors import InvalidPairError
from exactalg.poly import Phase
from exactalg.skew_twist import (
    Bicharacter,
    Cyclotomic,
    SkewElement,
    SkewMatrix,
    braid_check,
    faithfulness_defect,
    involutive_q,
    skew_normal_form,
    twist_product,
)

angles = st.fractions(min_value=0, max_value=1, max_denominator=8)


def upper_strategy(n):
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    return st.fixed_dictionaries({p: angles for p in pairs})


@st.composite
def tori(draw, n=3):
    q = SkewMatrix.from_upper(n, draw(upper_strategy(n)))
    chi = Bicharacter.from_upper(n, draw(upper_strategy(n)))
    return q, chi


laurent = st.lists(st.integers(-2, 2), min_size=3, max_size=3).map(tuple)


def mono(q, m):
    return SkewElement(q, {m: 1})


def test_two_generator_normal_form():
    q = SkewMatrix.from_upper(2, {(0, 1): Fraction(1, 4)})
    nf = skew_normal_form([1, 0], q)
    assert nf.format() == "[3/4]*x1*x2"
    assert skew_normal_form([(0, 1), (0, -1)], q) == SkewElement.one(q)


def test_twist_anticommutes_for_half_turn():
    q = SkewMatrix.trivial(2)
    chi = Bicharacter.from_upper(2, {(0, 1): Fraction(1, 2)})
    x1, x2 = SkewElement.generator(q, 0), SkewElement.generator(q, 1)
    assert twist_product(x1, x2, chi).format() == "-x1*x2"


def test_defect_examples():
    q = SkewMatrix.trivial(2)
    chi = Bicharacter.from_upper(2, {(0, 1): Fraction(1, 4)})
    assert str(faithfulness_defect(0, 1, q, chi)) == "1/2"
    assert faithfulness_defect(0, 1, q, Bicharacter.trivial(2)).is_one
    minus = SkewMatrix.from_upper(2, {(0, 1): Fraction(1, 2)})
    assert str(faithfulness_defect(0, 1, minus, Bicharacter.trivial(2))) == "1/2"
    assert str(faithfulness_defect(0, 1, minus, chi)) == "0/1"
    with pytest.raises(InvalidPairError):
        faithfulness_defect(0, 0, q, chi)


def test_involutive_q_shape():
    q = involutive_q(2)
    assert str(q) == "0/1 1/2\n1/2 0/1"
    for n in range(1, 7):
        q = involutive_q(n)
        assert all((q[i, j] ** 2).is_one for i in range(n) for j in range(n))


def test_invalid_matrices_rejected():
    with pytest.raises(ValueError):
        SkewMatrix(((Phase(), Phase(1, 4)), (Phase(1, 4), Phase())))
    with pytest.raises(ValueError):
        Bicharacter(((Phase(1, 2), Phase()), (Phase(), Phase())))


@settings(max_examples=50, deadline=None)
@given(tori(), laurent, laurent)
def test_monomial_product_matches_complex_oracle(qc, a, b):
    """Phase of x^a x^b is prod over i > j of q_ij^(a_i b_j), evaluated in C."""
    q, _ = qc
    got = (mono(q, a) * mono(q, b)).coefficient(tuple(x + y for x, y in zip(a, b)))
    want = 1 + 0j
    for i in range(3):
        for j in range(i):
            want *= cmath.exp(2j * cmath.pi * float(q[i, j].angle) * a[i] * b[j])
    assert abs(got.to_complex() - want) < 1e-12


@settings(max_examples=50, deadline=None)
@given(tori(), laurent, laurent, laurent)
def test_twisted_product_is_associative(qc, a, b, c):
    q, chi = qc
    x, y, z = mono(q, a), mono(q, b), mono(q, c)
    assert twist_product(twist_product(x, y, chi), z, chi) == twist_product(x, twist_product(y, z, chi), chi)


@settings(max_examples=40, deadline=None)
@given(tori(), st.lists(st.tuples(st.integers(0, 2), st.integers(-2, 2)), max_size=6), st.integers(0, 1000))
def test_normal_form_independent_of_schedule(qc, word, seed):
    q, _ = qc
    assert skew_normal_form(word, q) == skew_normal_form(word, q, random.Random(seed))


@settings(max_examples=40, deadline=None)
@given(tori(), st.sampled_from([(0, 1), (0, 2), (1, 2)]))
def test_defect_reciprocity(qc, ij):
    q, chi = qc
    i, j = ij
    assert (faithfulness_defect(i, j, q, chi) * faithfulness_defect(j, i, q, chi)).is_one
    want = chi((1, 0, 0) if i == 0 else (0, 1, 0), [int(k == j) for k in range(3)])
    assert faithfulness_defect(i, j, q, chi) == (want / want.inverse()) * q[i, j]


@pytest.mark.parametrize("n", range(2, 7))
def test_braid_check_passes_for_square_root_twist(n):
    q = involutive_q(n)
    report = braid_check(n, None, q, Bicharacter.square_root_of(q))
    assert report.passed and str(report) == "PASS (all relations)"


def test_braid_check_names_witness():
    q = SkewMatrix.from_upper(3, {(0, 2): Fraction(1, 2)})
    report = braid_check(3, None, q, Bicharacter.trivial(3))
    assert not report.passed
    assert [c.name for c in report.failures] == ["x1*x3 = x3*x1"]
    assert "defect 1/2" in str(report)


def test_cyclotomic_arithmetic():
    i = Cyclotomic(Phase(1, 4))
    assert i * i == Cyclotomic(-1)
    assert Cyclotomic(Phase(1, 3)) + Cyclotomic(Phase(2, 3)) == Cyclotomic(-1)
    assert str(Cyclotomic({Fraction(1, 2): 2})) == "-2"
    assert str(Cyclotomic({Fraction(1, 4): 2})) == "2*[1/4]"
    assert (i * i.inverse()) == Cyclotomic(1)
