"""
Groebner bases and ideal arithmetic
===================================

A short walk through the exact polynomial layer: bases under two orders,
membership, intersection and colon ideals.
"""

from exactalg.groebner import Ideal, buchberger, member
from exactalg.ideal_ops import intersect, quotient_by_ideal, quotient_by_poly, quotient_ring_nf
from exactalg.poly import DEGREVLEX, LEX, PolyRing


def show(ideal):
    return [g.format() for g in ideal.generators]


R = PolyRing.from_names("x,y")
I = Ideal.parse(R, "x^2 - y", "x*y - 1")

# lex eliminates x, leaving a univariate polynomial in y
print("lex:", buchberger(I, LEX).format())
print("drl:", buchberger(I, DEGREVLEX).format())

f = R("x^3 - 1")
print("x^3 - 1 in I?", member(f, I, LEX))
print("y^5 mod I =", quotient_ring_nf(R("y^5"), I, LEX).format(LEX))

# monomial ideals make the answers easy to check by eye
A = Ideal.parse(R, "x^2", "y")
B = Ideal.parse(R, "x", "y^2")
print("A ∩ B =", show(intersect(A, B)))
print("A : B =", show(quotient_by_ideal(A, B)))
print("A : x =", show(quotient_by_poly(A, R("x"))))
