"""
Lengths and Hilbert series
==========================

Colengths of Artinian quotients, Hilbert series of graded rings and the
invariants read off them.
"""

from hkmult import Ideal, PolynomialRing, QuotientRing, colength, hilbert_series
from hkmult import artinian_profile, dimension_and_multiplicity
from hkmult.corpus import corpus_entry

R = PolynomialRing(5, "xyz")

##############################################################################
# The colength of an ideal is the number of standard monomials of its
# Groebner basis.

I = Ideal(R, ["x^2", "y^3", "z^2 + x*y"])
print(colength(I))

##############################################################################
# Hilbert series come from the leading monomials by pivot recursion.  The
# reduced numerator evaluated at 1 is the multiplicity.

hs = hilbert_series(Ideal(R, ["x*y - z^2"]))
print(hs.reduced_numerator, hs.dimension, hs.multiplicity)
print(hs.coefficients(6))

##############################################################################
# For presented rings the pair (d, e) is what the bounds consume.

for name in ("quadric_A1", "twisted_cubic_cone", "two_lines"):
    Q = corpus_entry(name).quotient_ring()
    print(name, dimension_and_multiplicity(Q))

##############################################################################
# Modulo a parameter ideal we get an Artinian ring; its socle dimension is
# the Cohen-Macaulay type.

T = corpus_entry("twisted_cubic_cone")
prof = artinian_profile(T.quotient_ring(), T.parameter_ideal)
print(prof.colength, prof.hilbert_function, prof.socle_dim)

##############################################################################
# The ambient ring itself is regular: colength of the maximal ideal is 1.

print(colength(QuotientRing(R).maximal_ideal()))
