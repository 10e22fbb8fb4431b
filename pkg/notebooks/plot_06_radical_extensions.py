"""
Radical extensions
==================

Adjoin an n-th root of a minimal generator and compare multiplicities.
"""

from hkmult import PolynomialRing, QuotientRing
from hkmult import build_radical_extension, check_scaling_4_1, run_tower
from hkmult import check_nested_monotonicity_4_8
from hkmult.corpus import corpus_entry

##############################################################################
# On the line k[x], adjoining v with v^2 = x doubles every colength.

line = QuotientRing(PolynomialRing(5, "x"))
ext = build_radical_extension(line, "x", 2, normal=True)
rep = check_scaling_4_1(ext, ["x"], e_max=3)
print(rep.status, dict(rep.details)["per_q"])

##############################################################################
# On the quadric the same scaling holds for the maximal ideal.

Q = corpus_entry("quadric_A1").quotient_ring()
ext = build_radical_extension(Q, "x", 2)
print(ext.extended.defining.gens)
print(check_scaling_4_1(ext, e_max=2).status)

##############################################################################
# The nested colon lengths never grow with n, exactly at every q.

rep = check_nested_monotonicity_4_8(Q, ["x+y"], "z", n_max=3, q_list=[1, 5, 25])
print(rep.status, dict(rep.details)["rows[q, n, len_n, len_n+1, inclusion]"])

##############################################################################
# A tower adjoins roots of several generators in turn.

reports, info = run_tower(Q, ["x", "y", "z"], 2, 2, e_max=2)
print([r.status for r in reports], info["general_position_failures"])
