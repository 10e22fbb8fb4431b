"""
Groebner bases and ideal operations
===================================

Reduced bases, normal forms, intersections and colon ideals.
"""

from hkmult import GBBudget, GBBudgetExceeded, Ideal, PolynomialRing, buchberger
from hkmult import colon, intersection, normal_form

R = PolynomialRing(5, "xyz")

##############################################################################
# A reduced Groebner basis is unique for a fixed order, so two generating
# sets of the same ideal give the same basis.

I = Ideal(R, ["x*y - z^2", "x^3 - y*z"])
gb = buchberger(I)
for g in gb.elements:
    print(g)
print(gb == buchberger(Ideal(R, ["x^3 - y*z", "x*y - z^2"])))

##############################################################################
# Normal forms decide membership.

print(normal_form(R.parse("x^2*y"), gb))
print(I.contains(R.parse("x^2*y - x*z^2")))

##############################################################################
# Intersections go through an elimination variable; colon ideals by a
# principal ideal divide the intersection.

print(intersection(Ideal(R, ["x", "y"]), Ideal(R, ["x", "z"])).gens)
print(colon(Ideal(R, ["x^2", "y^2"]), Ideal(R, ["x", "y"])).gens)

##############################################################################
# Large computations can be capped.  The exception carries the partial
# basis reached so far.

try:
    buchberger(I, budget=GBBudget(max_pairs=1))
except GBBudgetExceeded as exc:
    print(exc)
