from fractions import Fraction

import pytest

from hkmult.gfpoly import PolynomialError, PolynomialRing
from hkmult.groebner import QuotientRing
from hkmult.hk import (
    associativity_check,
    default_emax,
    hk_estimate,
    hk_function,
    relative_hk,
)
from hkmult.corpus import corpus_entry


def ring(name, p=5):
    return corpus_entry(name, p).quotient_ring()


@pytest.mark.parametrize("p", [2, 3, 5])
def test_regular_rings_give_q_to_the_d(p):
    for nv in (1, 2, 3):
        Q = QuotientRing(PolynomialRing(p, "xyz"[:nv]))
        for e in (1, 2):
            assert hk_function(Q, None, p ** e) == p ** (e * nv)


def test_closed_forms_at_p5():
    A1 = ring("quadric_A1")
    assert [hk_function(A1, None, q) for q in (5, 25)] == [(3 * q * q - 1) // 2 for q in (5, 25)]
    lines = ring("two_lines")
    assert [hk_function(lines, None, q) for q in (5, 25, 125)] == [9, 49, 249]
    assert [hk_function(ring("cusp"), None, q) for q in (5, 25)] == [10, 50]
    d3 = ring("quadric_d3")
    assert [hk_function(d3, None, q) for q in (5, 25)] == [(4 * q ** 3 - q) // 3 for q in (5, 25)]


def test_frozen_sample_tables():
    # values cross-checked against the closed forms above
    assert [hk_function(ring("A2_surface"), None, q) for q in (1, 5, 25)] == [1, 41, 1041]
    assert [hk_function(ring("A3_surface"), None, q) for q in (1, 5, 25)] == [1, 43, 1093]
    assert [hk_function(ring("twisted_cubic_cone"), None, q) for q in (1, 5, 25)] == [1, 50, 1249]


def test_non_power_q_is_rejected():
    with pytest.raises(PolynomialError):
        hk_function(ring("quadric_A1"), None, 10)


def test_estimate_fields():
    est = hk_estimate(ring("quadric_A1"), e_max=2)
    assert [s.q for s in est.samples] == [5, 25]
    assert est.estimate == Fraction(937, 625)
    assert est.error_heuristic == Fraction(937, 625) - Fraction(37, 25)
    assert est.tolerance() == est.error_heuristic
    assert est.d == 2 and not est.truncated
    assert est.table()[1]["normalized"] == "937/625"


def test_single_exponent_uses_q_equal_one():
    est = hk_estimate(ring("quadric_A1"), e_max=1)
    assert [s.q for s in est.samples] == [1, 5]


def test_default_emax():
    assert [default_emax(p) for p in (2, 5, 7, 13, 17)] == [3, 3, 2, 2, 1]


def test_parallel_sampling_matches_serial():
    Q = ring("quadric_A1")
    assert hk_estimate(Q, e_max=2, workers=2).samples == hk_estimate(Q, e_max=2).samples


def test_relative_multiplicity():
    Q = ring("quadric_A1")
    est = relative_hk(Q, ["x+y", "z"], None, e_max=2)
    # lambda(R/(x)^[q]) = 2 q^2 for a minimal reduction of a CM ring with e = 2
    assert [s.colength for s in est.samples] == [2 * 25 - 37, 2 * 625 - 937]
    with pytest.raises(ValueError, match="relative HK requires nested ideals"):
        relative_hk(Q, None, ["x", "y"], e_max=1)


def test_associativity_for_two_lines():
    pres = corpus_entry("two_lines")
    Q = pres.quotient_ring()
    rep = associativity_check(Q, pres.component_ideals(Q.ring), e_max=3)
    assert rep.status == "holds"
    assert rep.rhs == 2
    rep = associativity_check(Q, pres.component_ideals(Q.ring), e_max=1, unmixed=False)
    assert rep.status == "inconclusive" and "not unmixed" in rep.note


def test_associativity_rejects_bad_components():
    Q = ring("two_lines")
    with pytest.raises(ValueError):
        associativity_check(Q, [(["x + 1"], 1)], e_max=1, unmixed=True)
