"""
Curves, points and 3-torsion over a small prime field
======================================================

"""

# a field context fixes the prime and its canonical constants
from ec3sub import Curve, classify, make_field, to_short
from ec3sub import oracle

F = make_field(7)
print(F.conventions())

# y^2 + y = x^3 has nine points over F_7, all of them 3-torsion
E = Curve.general(F, 0, 0, 1, 0, 0)
pts = oracle.points(E)
print(E, "has", len(pts), "points")
print("group:", oracle.group_structure(E))

# adding a point to itself twice lands back at infinity
P = (0, 0)
print("P =", P, " 2P =", E.mul(2, P), " 3P =", E.mul(3, P))

# the short form y^2 = x^3 + 2 is the same curve after a change of variables
A, B, W = to_short(E)
print("short form: A =", A, "B =", B, "via", W)

# the classifier reports the shape of the 3-torsion and the family it belongs to
report = classify(E)
print("rational 3-torsion order:", report.rational_3torsion_order)
print("family coordinates:", report.family)

# the quadratic twist y^2 = x^3 + 5 keeps four stable subgroups, none pointwise rational
T = Curve.short(F, 0, 5)
for s in oracle.stable_order3_subgroups(T):
    print("abscissa", s.abscissa, "pointwise" if s.pointwise_rational else "twisted")
