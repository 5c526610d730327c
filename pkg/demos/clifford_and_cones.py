"""
Clifford products, the CLH relations and toric cones
====================================================
"""

from fractions import Fraction

from exactalg.clifford_hopf import CLHElement, CliffordElement, Signature, clh_apply, clh_morphism_check, grassmann_product
from exactalg.toric import Cone, dual_cone, hilbert_basis, is_complete, projective_fan, toric_ideal

sig = Signature.diagonal([Fraction(1), Fraction(-1)])
e1, e2 = CliffordElement.blade(sig, [0]), CliffordElement.blade(sig, [1])
print("e1*e2 =", (e1 * e2).format(), "  e2*e1 =", (e2 * e1).format())
print("(e1*e2)^2 =", (e1 * e2 * e1 * e2).format())
print("e2 ^ e1 =", grassmann_product(e2, e1).format())

x = CLHElement.G(2, 0) * CLHElement.E(2, 1)
print("coproduct:", clh_apply("coproduct", x))
print("antipode:", clh_apply("antipode", x))
print("D=3 relations:", clh_morphism_check(3))

c = Cone([(1, 0), (1, 2)])
d = dual_cone(c)
print("dual of", c, "is", d)
print("Hilbert basis:", hilbert_basis(d))
print("toric ideal:", [g.format() for g in toric_ideal(hilbert_basis(d)).generators])
print("P^2 fan complete?", bool(is_complete(projective_fan(2))))
