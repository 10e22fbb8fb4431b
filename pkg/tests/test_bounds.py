from fractions import Fraction

import pytest

from hkmult import bounds as B
from hkmult.corpus import corpus_entry
from hkmult.report import BOUND_IDS, render_rational


def analysis(name, **kw):
    pres = corpus_entry(name)
    R = pres.quotient_ring()
    kw.setdefault("e_max", 2)
    return B.RingAnalysis(R, pres.params(R.ring), **kw)


def test_dimension_bound_values():
    assert B.dimension_bound_rhs(2) == Fraction(19, 18)
    assert B.dimension_bound_rhs(3) == 1 + Fraction(1, 6591)


def test_bound_ids_are_stable():
    assert len(BOUND_IDS) == 13 and len(set(BOUND_IDS)) == 13
    assert BOUND_IDS[0] == "sandwich" and BOUND_IDS[-1] == "dimension_4_10"


def test_rational_rendering():
    assert render_rational(Fraction(3, 2)) == "3/2"
    assert render_rational(2) == "2/1"
    assert render_rational(None) is None


def test_sandwich_on_quadric():
    rep = B.check_sandwich(analysis("quadric_A1"))
    assert rep.status == "holds"
    assert dict(rep.details)["upper"] == 2 and rep.rhs == 1


def test_type_and_minimal_multiplicity():
    A = analysis("quadric_A1")
    rep = B.check_type_bound(A)
    assert dict(rep.details)["t"] == 1 and rep.rhs == 1 and rep.status == "holds"
    T = analysis("twisted_cubic_cone")
    rep = B.check_type_bound(T)
    assert dict(rep.details)["t"] == 2 and rep.rhs == Fraction(3, 2) and rep.status == "holds"
    rep = B.check_minimal_multiplicity(T)
    assert rep.rhs == Fraction(3, 2) and rep.status == "holds"
    assert dict(rep.details)["embedding_dimension"] == 4


def test_duality_bound_with_ideal():
    A = analysis("quadric_A1")
    rep = B.check_duality_bound(A)
    # I = m: a' = 1, f' = lambda(R/((x):m)) = 1, rhs = e/(f'+a') = 1
    assert rep.rhs == 1 and rep.status == "holds"
    rep = B.check_duality_bound(A, I=["x+y", "z", "x^2"])
    assert rep.status == "holds"
    rep = B.check_duality_bound(A, I=["x"])
    assert rep.status == "inconclusive"


def test_contrapositive_certificates():
    A = analysis("quadric_A1")
    rep = B.check_small_ehk_cm(A)
    assert rep.conditional and rep.status == "holds"
    assert rep.certificate.kind == "F-regular+Gorenstein"
    assert B.deduce_regularity_class(A).kind == "F-regular+Gorenstein"
    L = analysis("two_lines")
    rep = B.check_small_ehk_cm(L)
    assert rep.certificate is None
    assert B.deduce_regularity_class(L).kind == "none"
    assert B.deduce_regularity_class(analysis("regular2")).kind == "regular"


def test_hypothesis_gates():
    T = analysis("twisted_cubic_cone")
    for fn in (B.check_embdim_bound, B.check_graded_bounds, B.check_gorenstein_non_fregular):
        rep = fn(T)
        assert rep.status == "inconclusive" and "Gorenstein" in rep.note
    L = analysis("two_lines")
    assert B.check_dimension_bound(L).status == "inconclusive"
    assert B.check_embdim_bound(L).status == "inconclusive"
    pres = corpus_entry("quadric_A1")
    R = pres.quotient_ring()
    bare = B.RingAnalysis(R, pres.params(R.ring), e_max=1, flags={})
    assert B.check_type_bound(bare).status == "inconclusive"
    assert B.check_small_ehk_unmixed(bare).status == "inconclusive"


def test_graded_bound_details():
    rep = B.check_graded_bounds(analysis("quadric_A1"))
    d = dict(rep.details)
    assert d["k"] == [1, 1] and d["r"] == 1 and d["r_bound"] == 2
    assert rep.rhs == 2


def test_gorenstein_threshold():
    rep = B.check_gorenstein_non_fregular(analysis("quadric_d3"))
    assert rep.rhs == Fraction(4, 3)


def test_dimension_bound_on_corpus_surfaces():
    for name in ("quadric_A1", "A2_surface", "A3_surface", "twisted_cubic_cone"):
        rep = B.check_dimension_bound(analysis(name))
        assert rep.status == "holds" and rep.rhs == Fraction(19, 18)


def test_uncertified_parameters_are_inconclusive():
    pres = corpus_entry("quadric_A1")
    R = pres.quotient_ring()
    A = B.RingAnalysis(R, ["x+y", "z^2"], e_max=1)
    assert not A.params_certified
    assert B.check_type_bound(A).status == "inconclusive"


def test_tolerance_override():
    A = analysis("quadric_A1", tol=Fraction(1, 100))
    assert B.check_sandwich(A).tolerance_used == Fraction(1, 100)
