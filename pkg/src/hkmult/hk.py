"""Hilbert-Kunz functions, multiplicity estimates over a q-grid, relative
multiplicities and the associativity comparison."""

from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .gfpoly import PolynomialError, is_power_of
from .groebner import GBBudgetExceeded, Ideal, QuotientRing, frobenius_power
from .hilbert import (
    MultiplicityError,
    colength,
    dimension_and_multiplicity,
    krull_dimension,
)
from .report import (
    DEFAULT_TOL_FLOOR,
    HOLDS,
    INCONCLUSIVE,
    VIOLATED,
    BoundReport,
    inconclusive,
)


@dataclass(frozen=True)
class HKSample:
    e: int
    q: int
    colength: int
    normalized: Fraction


@dataclass(frozen=True)
class HKEstimate:
    samples: tuple
    d: int
    truncated: bool = False

    @property
    def estimate(self) -> Fraction:
        return self.samples[-1].normalized

    @property
    def error_heuristic(self) -> Fraction:
        if len(self.samples) < 2:
            return Fraction(0)
        return abs(self.samples[-1].normalized - self.samples[-2].normalized)

    def tolerance(self, floor: Fraction = DEFAULT_TOL_FLOOR) -> Fraction:
        return max(self.error_heuristic, floor)

    def table(self) -> list[dict]:
        return [{"e": s.e, "q": s.q, "colength": s.colength,
                 "normalized": f"{s.normalized.numerator}/{s.normalized.denominator}",
                 "normalized_approx": round(float(s.normalized), 6)}
                for s in self.samples]


def default_emax(p: int) -> int:
    if p <= 5:
        return 3
    if p <= 13:
        return 2
    return 1


def _as_ideal(R: QuotientRing, J) -> Ideal:
    if J is None:
        return R.maximal_ideal()
    if isinstance(J, Ideal):
        return J
    return Ideal(R.ring, J)


def hk_function(R: QuotientRing, J, q: int) -> int:
    """``lambda(R / J^[q] R)``."""
    J = _as_ideal(R, J)
    if not is_power_of(q, R.p):
        raise PolynomialError("Frobenius power requires q = p^e")
    return colength(R.ideal(frobenius_power(J, q)))


def resolve_dimension(R: QuotientRing, d: int | None = None) -> int:
    if d is not None:
        return d
    try:
        return dimension_and_multiplicity(R)[0]
    except MultiplicityError:
        return krull_dimension(R)


def _sample_task(args):
    R, J, e = args
    q = R.p ** e
    return e, q, hk_function(R, J, q)


def _collect(R: QuotientRing, J: Ideal, exponents: Sequence[int], workers: int):
    """``{e: colength}``; stops at the first budget failure (in q order)."""
    results: dict = {}
    failure = None
    if workers > 1 and len(exponents) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(_sample_task, (R, J, e)) for e in exponents]
            for e, fut in zip(exponents, futures):
                try:
                    results[e] = fut.result()[2]
                except GBBudgetExceeded as exc:
                    failure = exc
                    break
    else:
        for e in exponents:
            try:
                results[e] = hk_function(R, J, R.p ** e)
            except GBBudgetExceeded as exc:
                failure = exc
                break
    return results, failure


def hk_estimate(R: QuotientRing, J=None, e_max: int | None = None, d: int | None = None,
                workers: int = 1) -> HKEstimate:
    """Sample ``lambda(R/J^[q])/q^d`` for ``q = p, ..., p^e_max``.

    ``J`` defaults to the homogeneous maximal ideal.  If ``e_max == 1`` the
    ``q = 1`` value is used for the error heuristic.
    """
    J = _as_ideal(R, J)
    e_max = default_emax(R.p) if e_max is None else e_max
    if e_max < 1:
        raise ValueError("e_max must be at least 1")
    d = resolve_dimension(R, d)
    exps = list(range(0 if e_max == 1 else 1, e_max + 1))
    results, failure = _collect(R, J, exps, workers)
    samples = []
    for e in exps:
        if e not in results:
            break
        q = R.p ** e
        samples.append(HKSample(e, q, results[e], Fraction(results[e], q ** d)))
    if not samples:
        raise failure
    if len(samples) == 1 and samples[0].e > 0:
        # truncated to one sample: keep a heuristic by adding q = 1
        base = hk_function(R, J, 1)
        samples.insert(0, HKSample(0, 1, base, Fraction(base)))
    return HKEstimate(tuple(samples), d, truncated=failure is not None)


def relative_hk(R: QuotientRing, I, J, e_max: int | None = None, d: int | None = None,
                workers: int = 1) -> HKEstimate:
    """Samples of ``(lambda(R/I^[q]) - lambda(R/J^[q]))/q^d`` for ``I ⊆ J``."""
    I = _as_ideal(R, I)
    J = _as_ideal(R, J)
    JR = R.ideal(J)
    if not all(JR.contains(g) for g in I.gens):
        raise ValueError("relative HK requires nested ideals")
    e_max = default_emax(R.p) if e_max is None else e_max
    d = resolve_dimension(R, d)
    exps = list(range(0 if e_max == 1 else 1, e_max + 1))
    ri, fi = _collect(R, I, exps, workers)
    rj, fj = _collect(R, J, exps, workers)
    samples = []
    for e in exps:
        if e not in ri or e not in rj:
            break
        q = R.p ** e
        diff = ri[e] - rj[e]
        samples.append(HKSample(e, q, diff, Fraction(diff, q ** d)))
    if not samples:
        raise fi or fj
    return HKEstimate(tuple(samples), d, truncated=(fi or fj) is not None)


def associativity_check(R: QuotientRing, components: Iterable, e_max: int | None = None,
                        unmixed: bool | None = None, estimate: HKEstimate | None = None,
                        tol_floor: Fraction = DEFAULT_TOL_FLOOR) -> BoundReport:
    """Compare ``e_HK(R)`` with ``sum lambda_P * e_HK(k[x]/P)`` over the
    user-declared top-dimensional minimal primes ``P``."""
    components = [(P if isinstance(P, Ideal) else Ideal(R.ring, P), int(lam))
                  for P, lam in components]
    if unmixed is None:
        pres = R.presentation
        unmixed = bool(pres is not None and pres.flags.get("unmixed_asserted"))
    if not components:
        return inconclusive("associativity", "no components declared")
    for P, _ in components:
        gb = P.groebner_basis()
        if not all(gb.contains(g) for g in R.defining.gens):
            raise ValueError(f"component {P} does not contain the defining ideal")
    if not unmixed:
        return inconclusive("associativity", "inconclusive: input not unmixed",
                            hypotheses=("unmixed_asserted missing",))
    est = estimate or hk_estimate(R, e_max=e_max)
    d = est.d
    rhs = Fraction(0)
    tol = est.tolerance(tol_floor)
    parts = []
    for P, lam in components:
        RP = QuotientRing(R.ring, P)
        if krull_dimension(RP) != d:
            raise ValueError(f"component {P} is not of top dimension {d}")
        eP = hk_estimate(RP, e_max=est.samples[-1].e, d=d)
        rhs += lam * eP.estimate
        tol += lam * eP.tolerance(tol_floor)
        parts.append([", ".join(map(str, P.gens)), lam, eP.estimate])
    status = HOLDS if abs(est.estimate - rhs) <= tol else VIOLATED
    return BoundReport("associativity", est.estimate, rhs, status, tolerance_used=tol,
                       hypotheses=("unmixed_asserted", "components user-declared"),
                       note="e_HK(R) = sum over components of lambda_P * e_HK(R/P)",
                       details=(("components", parts),))
