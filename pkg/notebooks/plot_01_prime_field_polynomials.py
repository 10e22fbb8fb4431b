"""
Polynomials over a prime field
==============================

Build a ring over F_p, parse a few polynomials and watch how Frobenius
powers behave in characteristic p.
"""

from hkmult import GREVLEX, LEX, PolynomialRing

##############################################################################
# A ring is a characteristic, a tuple of variable names and a monomial order.
# Grevlex is the default.

R = PolynomialRing(5, "xyz")
f = R.parse("x^2*y - 3*z^3 + 7")
g = R.parse("x + y")
print(f)          # coefficients are reduced mod 5
print(f * g)

##############################################################################
# Leading terms depend on the order.

print(f.leading_term(GREVLEX), f.leading_term(LEX))

##############################################################################
# Raising to the p-th power is additive in characteristic p, so the binomial
# middle terms vanish.

print(g ** 5)
print(g.frobenius(25) == R.parse("x^25 + y^25"))

##############################################################################
# Weighted gradings are declared per variable; the cusp y^2 - x^3 is
# homogeneous once x has weight 2 and y has weight 3.

W = PolynomialRing(7, "xy", weights=(2, 3))
cusp = W.parse("y^2 - x^3")
print(cusp.weighted_degree(), cusp.is_homogeneous())
