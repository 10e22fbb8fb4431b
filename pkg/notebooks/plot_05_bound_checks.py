"""
Checking lower bounds
=====================

Run every bound on one ring and read the certificates.
"""

from hkmult import deduce_regularity_class
from hkmult.bounds import RingAnalysis, check_dimension_bound, check_sandwich
from hkmult.bounds import check_type_bound, dimension_bound_rhs
from hkmult.corpus import corpus_entry

##############################################################################
# A RingAnalysis caches the invariants that several checks share.

pres = corpus_entry("quadric_A1")
A = RingAnalysis(pres.quotient_ring(), params=pres.parameter_ideal, e_max=2)
print(A.d, A.e, float(A.ehk), A.params_certified)

##############################################################################
# Each check returns a report with a status: holds, violated or
# inconclusive.

for check in (check_sandwich, check_type_bound, check_dimension_bound):
    rep = check(A)
    print(rep.bound_id, rep.status, float(rep.lhs), float(rep.rhs), rep.note)

print(dimension_bound_rhs(2), dimension_bound_rhs(3))

##############################################################################
# An estimate far enough below e/(e-1) certifies the ring by contraposition.
# The two lines stay uncertified.

print(deduce_regularity_class(A))
lines = corpus_entry("two_lines")
print(deduce_regularity_class(RingAnalysis(lines.quotient_ring(),
                                           params=lines.parameter_ideal)))
