"""
Hilbert-Kunz functions and estimates
====================================

Sample lambda(R/m^[q]) over q = p^e and normalise by q^d.
"""

from fractions import Fraction

from hkmult import hk_estimate, hk_function
from hkmult.corpus import corpus_entry

##############################################################################
# For the A1 quadric xy = z^2 the function is (3q^2 - 1)/2.

A1 = corpus_entry("quadric_A1").quotient_ring()
print([hk_function(A1, None, q) for q in (1, 5, 25, 125)])

##############################################################################
# The estimate is the last normalised sample.  The gap between the last two
# samples serves as an error heuristic.

est = hk_estimate(A1, e_max=3)
for row in est.table():
    print(row)
print(float(est.estimate), float(est.error_heuristic), est.tolerance())

##############################################################################
# Two crossing lines give 2q - 1, approaching 2.

lines = corpus_entry("two_lines").quotient_ring()
est = hk_estimate(lines, e_max=3)
print([s.colength for s in est.samples], abs(est.estimate - 2) < Fraction(1, 100))
