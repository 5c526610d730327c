"""
Skew Laurent monomials and twisted products
===========================================

Commutation phases are stored as angles, so q = -1 is the angle 1/2.
"""

from fractions import Fraction

from exactalg.skew_twist import (
    Bicharacter,
    SkewMatrix,
    braid_check,
    faithfulness_defect,
    involutive_q,
    skew_normal_form,
    twist_product,
)

q = SkewMatrix.from_upper(2, {(0, 1): Fraction(1, 4)})  # x1*x2 = i*x2*x1, so x2*x1 picks up -i = [3/4]
x2x1 = skew_normal_form([1, 0], q)
print("x2*x1 =", x2x1)

chi = Bicharacter.from_upper(2, {(0, 1): Fraction(1, 8)})
a = skew_normal_form([0], q)
b = skew_normal_form([1], q)
print("x1 * x2 twisted:", twist_product(a, b, chi))
print("defect(1, 2) =", faithfulness_defect(0, 1, q, chi))

# the involutive pattern with chi = sqrt(q) passes the braid relations
for n in range(2, 5):
    qn = involutive_q(n)
    print(n, bool(braid_check(n, None, qn, Bicharacter.square_root_of(qn))))

bad = braid_check(3, None, SkewMatrix.from_upper(3, {(0, 2): Fraction(1, 2)}), Bicharacter.trivial(3))
print("failing relations:", [c.name for c in bad.failures])
