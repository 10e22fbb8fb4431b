"""Lower bounds for the Hilbert-Kunz multiplicity, checked against estimates.

Every check returns a :class:`~hkmult.report.BoundReport`.  Tight closures
are never computed: ``(x)`` stands in for ``(x)*`` and ordinary length for
star length.  Both replacements can only shrink the right-hand sides, so a
violated report on a check whose hypotheses are met signals a bug.

Conditional bounds ("if R is not F-regular then ...") are reported as
holding either way; when the estimate falls below the threshold with
margin, the report carries the certificate obtained by contraposition.
"""

from __future__ import annotations

from fractions import Fraction
from functools import cached_property
from math import factorial

from .groebner import Ideal, QuotientRing, colon
from .hilbert import (
    ArtinianProfile,
    InfiniteColengthError,
    MultiplicityError,
    artinian_profile,
    colength,
    dimension_and_multiplicity,
    embedding_dimension,
)
from .hk import HKEstimate, hk_estimate, resolve_dimension
from .report import (
    DEFAULT_TOL_FLOOR,
    HOLDS,
    NO_CERTIFICATE,
    SUB_FINITE_FIELD,
    SUB_STAR_LENGTH,
    SUB_TIGHT_CLOSURE,
    VIOLATED,
    BoundReport,
    Certificate,
    inconclusive,
    lower_bound_report,
)

FLAG_NAMES = ("homogeneous", "cm_asserted", "gorenstein_asserted",
              "unmixed_asserted", "normal_asserted")


class RingAnalysis:
    """Lazily computed invariants of a presented ring shared by all checks.

    ``tol`` overrides the default tolerance (error heuristic, floored).
    """

    def __init__(self, R: QuotientRing, params=None, e_max: int | None = None,
                 tol=None, estimate: HKEstimate | None = None, d: int | None = None,
                 flags: dict | None = None, workers: int = 1):
        self.R = R
        if params is not None and not isinstance(params, Ideal):
            params = Ideal(R.ring, params)
        self.params = params
        self.e_max = e_max
        self._tol = None if tol is None else Fraction(tol)
        self._d = d
        self.workers = workers
        if estimate is not None:
            self.__dict__["estimate"] = estimate
        if flags is None:
            pres = R.presentation
            flags = dict(pres.flags) if pres is not None else {}
        self.flags = {k: bool(flags.get(k)) for k in FLAG_NAMES}
        self.substitutions: list[str] = []

    def flag(self, name: str) -> bool:
        return self.flags.get(name, False)

    @cached_property
    def params_colength(self) -> int | None:
        if self.params is None:
            return None
        return colength(self.R.ideal(self.params))

    @cached_property
    def dim_mult(self) -> tuple[int, int]:
        """``(d, e)``; from the Hilbert series when graded, else ``e = lambda(R/params)``."""
        try:
            d, e = dimension_and_multiplicity(self.R)
            if self._d is not None:
                d = self._d
            return d, e
        except MultiplicityError:
            if self.params is None:
                raise
            d = resolve_dimension(self.R, self._d)
            self.substitutions.append("e(R) taken as lambda(R/params)")
            return d, self.params_colength

    @property
    def d(self) -> int:
        return self.dim_mult[0]

    @property
    def e(self) -> int:
        return self.dim_mult[1]

    @cached_property
    def estimate(self) -> HKEstimate:
        return hk_estimate(self.R, e_max=self.e_max, d=self.d, workers=self.workers)

    @property
    def ehk(self) -> Fraction:
        return self.estimate.estimate

    @property
    def tol(self) -> Fraction:
        if self._tol is not None:
            return self._tol
        return self.estimate.tolerance(DEFAULT_TOL_FLOOR)

    @cached_property
    def params_certified(self) -> bool:
        if self.params is None or len(self.params.gens) != self.d:
            return False
        try:
            return self.params_colength == self.e
        except InfiniteColengthError:
            return False

    @cached_property
    def profile(self) -> ArtinianProfile:
        return artinian_profile(self.R, self.params)

    @cached_property
    def embdim(self) -> int:
        return embedding_dimension(self.R)

    @property
    def is_regular(self) -> bool:
        return self.e == 1


def _analysis(R, **kw) -> RingAnalysis:
    if isinstance(R, RingAnalysis):
        return R
    return RingAnalysis(R, **kw)


def _needs_params(A: RingAnalysis, bound_id: str) -> BoundReport | None:
    if A.params is None:
        return inconclusive(bound_id, "no parameter ideal supplied")
    if not A.params_certified:
        return inconclusive(bound_id, "parameter ideal not certified as a minimal reduction")
    return None


def _conditional(bound_id: str, A: RingAnalysis, rhs: Fraction, kind: str, hypotheses,
                 premise: str, **kw) -> BoundReport:
    """``if R is not <kind> then e_HK >= rhs``; certificate when below with margin."""
    est, tol = A.ehk, A.tol
    cert = None
    if A.estimate.truncated:
        note = "estimate truncated by the GB budget: no certificate"
    elif est + tol < rhs:
        cert = Certificate(kind, premise=f"{premise}: {float(est):.6f} + {float(tol):.6f} < "
                                         f"{float(rhs):.6f}", citation=bound_id)
        note = f"estimate below threshold: R is {kind} by contraposition"
    else:
        note = "estimate not below threshold by more than the tolerance: no conclusion"
    return BoundReport(bound_id, est, rhs, HOLDS, tolerance_used=tol, conditional=True,
                       hypotheses=tuple(hypotheses), note=note, certificate=cert,
                       substitutions=kw.pop("substitutions", ()), **kw)


# ---------------------------------------------------------------- the checks

def check_sandwich(R, **kw) -> BoundReport:
    """``max(1, e/d!) <= e_HK <= e``."""
    A = _analysis(R, **kw)
    try:
        d, e = A.d, A.e
    except (MultiplicityError, InfiniteColengthError) as exc:
        return inconclusive("sandwich", f"missing multiplicity: {exc}")
    est, tol = A.ehk, A.tol
    lower = max(Fraction(1), Fraction(e, factorial(d)))
    upper = Fraction(e)
    ok = lower - tol <= est <= upper + tol
    return BoundReport("sandwich", est, lower, HOLDS if ok else VIOLATED, tolerance_used=tol,
                       details=(("upper", upper), ("d", d), ("e", e)),
                       note="max(1, e/d!) <= e_HK <= e")


def check_duality_bound(R, I=None, **kw) -> BoundReport:
    """``e_HK >= e/(f' + a')`` with ``a' = lambda(R/I)`` and
    ``f' = lambda(R/((x):I))``."""
    bid = "duality_3_2"
    A = _analysis(R, **kw)
    if not A.flag("cm_asserted"):
        return inconclusive(bid, "hypothesis not met: Cohen-Macaulay not asserted")
    bad = _needs_params(A, bid)
    if bad:
        return bad
    Rq = A.R
    if I is None:
        I = Rq.maximal_ideal()
    elif not isinstance(I, Ideal):
        I = Ideal(Rq.ring, I)
    base = Rq.ideal(A.params)
    IR = Rq.ideal(I)
    if not base.issubset(IR):
        return inconclusive(bid, "I does not contain the parameter ideal")
    try:
        a = colength(IR)
        Jp = colon(base, IR)
        f = colength(Jp)
    except InfiniteColengthError as exc:
        return inconclusive(bid, f"colength infinite: {exc}")
    e = A.params_colength
    b = e - f
    rhs = Fraction(e, f + a)
    return lower_bound_report(
        bid, A.ehk, rhs, A.tol,
        substitutions=(SUB_TIGHT_CLOSURE, SUB_STAR_LENGTH, SUB_FINITE_FIELD),
        hypotheses=("cm_asserted",),
        note="e_HK >= e/(f'+a') = e/(e-b'+a')",
        details=(("a", a), ("b", b), ("f", f), ("e", e)))


def check_type_bound(R, **kw) -> BoundReport:
    """``e_HK >= e/(e - t + 1)``, ``t`` the socle dimension modulo the parameters."""
    bid = "type_3_3"
    A = _analysis(R, **kw)
    if not A.flag("cm_asserted"):
        return inconclusive(bid, "hypothesis not met: Cohen-Macaulay not asserted")
    bad = _needs_params(A, bid)
    if bad:
        return bad
    e, t = A.e, A.profile.socle_dim
    rhs = Fraction(e, e - t + 1)
    return lower_bound_report(bid, A.ehk, rhs, A.tol, hypotheses=("cm_asserted",),
                              substitutions=(SUB_FINITE_FIELD,),
                              note="e_HK >= e/(e-t+1)", details=(("e", e), ("t", t)))


def check_minimal_multiplicity(R, **kw) -> BoundReport:
    """``e_HK >= e/2`` when ``e = mu(m) - d + 1`` and ``R`` is not regular."""
    bid = "minmult_3_4"
    A = _analysis(R, **kw)
    if not A.flag("cm_asserted"):
        return inconclusive(bid, "hypothesis not met: Cohen-Macaulay not asserted")
    bad = _needs_params(A, bid)
    if bad:
        return bad
    d, e, v = A.d, A.e, A.embdim
    details = (("e", e), ("d", d), ("embedding_dimension", v))
    if e < 2:
        return inconclusive(bid, "hypothesis not met: ring is regular", details=details)
    if e != v - d + 1:
        return inconclusive(bid, "hypothesis not met: not of minimal multiplicity",
                            details=details)
    return lower_bound_report(bid, A.ehk, Fraction(e, 2), A.tol, hypotheses=("cm_asserted",),
                              note="e_HK >= e/2", details=details)


def check_small_ehk_cm(R, **kw) -> BoundReport:
    """CM and not (Gorenstein and F-regular)  =>  ``e_HK >= e/(e-1)``."""
    bid = "smallehk_3_5"
    A = _analysis(R, **kw)
    if not A.flag("cm_asserted"):
        return inconclusive(bid, "hypothesis not met: Cohen-Macaulay not asserted")
    e = A.e
    if e < 2:
        return inconclusive(bid, "ring is regular (e = 1): threshold undefined")
    return _conditional(bid, A, Fraction(e, e - 1), "F-regular+Gorenstein", ("cm_asserted",),
                        "e_HK < e/(e-1)", details=(("e", e),))


def check_small_ehk_unmixed(R, **kw) -> BoundReport:
    """Formally unmixed, ``d >= 2``: ``e_HK <= 1 + max(1/d!, 1/e)`` forces
    Gorenstein and F-regular."""
    bid = "smallehk_3_6"
    A = _analysis(R, **kw)
    if not A.flag("unmixed_asserted"):
        return inconclusive(bid, "hypothesis not met: unmixedness not asserted")
    d, e = A.d, A.e
    if d < 2:
        return inconclusive(bid, "hypothesis not met: requires d >= 2")
    rhs = 1 + max(Fraction(1, factorial(d)), Fraction(1, e))
    return _conditional(bid, A, rhs, "F-regular+Gorenstein", ("unmixed_asserted",),
                        "e_HK < 1 + max(1/d!, 1/e)", details=(("d", d), ("e", e)))


def check_embdim_bound(R, **kw) -> BoundReport:
    """Gorenstein, not F-regular  =>  ``e_HK >= e/(e - v + d)``."""
    bid = "embdim_3_7"
    A = _analysis(R, **kw)
    if not A.flag("gorenstein_asserted"):
        return inconclusive(bid, "hypothesis not met: Gorenstein not asserted")
    d, e, v = A.d, A.e, A.embdim
    details = (("d", d), ("e", e), ("embedding_dimension", v))
    if d < 2:
        return inconclusive(bid, "hypothesis gate: requires d >= 2", details=details)
    if e - v + d <= 0:
        return inconclusive(bid, "bound degenerate: e - v + d <= 0", details=details)
    return _conditional(bid, A, Fraction(e, e - v + d), "F-regular", ("gorenstein_asserted",),
                        "e_HK < e/(e-v+d)", details=details,
                        substitutions=(SUB_TIGHT_CLOSURE, SUB_FINITE_FIELD))


def check_graded_bounds(R, **kw) -> BoundReport:
    """Gorenstein, not F-regular  =>  ``e_HK >= max_i e/(e - k_i) >= (r+1)/r``
    where ``k_i`` is the Hilbert function of the associated graded ring of
    ``R/(x)`` and ``r`` its top degree."""
    bid = "graded_3_10"
    A = _analysis(R, **kw)
    if not A.flag("gorenstein_asserted"):
        return inconclusive(bid, "non-Gorenstein: hypothesis not met")
    d = A.d
    if d < 2:
        return inconclusive(bid, "inconclusive: requires d >= 2 as for the (d+1)/d form")
    bad = _needs_params(A, bid)
    if bad:
        return bad
    prof = A.profile
    if prof.socle_dim != 1:
        return inconclusive(bid, f"socle dimension {prof.socle_dim} != 1: not Gorenstein")
    e, k, r = A.e, prof.hilbert_function, prof.top_degree
    details = (("e", e), ("k", list(k)), ("r", r))
    if r == 0:
        return inconclusive(bid, "r = 0: ring is regular", details=details)
    B = max(Fraction(e, e - k[i]) for i in range(1, r + 1))
    B2 = Fraction(r + 1, r)
    return _conditional(bid, A, B, "F-regular", ("gorenstein_asserted",),
                        "e_HK < max_i e/(e-k_i)", details=details + (("r_bound", B2),),
                        substitutions=(SUB_TIGHT_CLOSURE, SUB_FINITE_FIELD))


def check_gorenstein_non_fregular(R, **kw) -> BoundReport:
    """Gorenstein, ``d > 1``, not F-regular  =>  ``e_HK >= (d+1)/d``."""
    bid = "gor_nonfreg_3_12"
    A = _analysis(R, **kw)
    if not A.flag("gorenstein_asserted"):
        return inconclusive(bid, "hypothesis not met: Gorenstein not asserted")
    d = A.d
    if d < 2:
        return inconclusive(bid, "hypothesis not met: requires d >= 2")
    details = (("d", d),)
    if A.embdim - d >= 2:
        details += (("non_hypersurface_rhs", Fraction(d, d - 1)),)
    return _conditional(bid, A, Fraction(d + 1, d), "F-regular", ("gorenstein_asserted",),
                        "e_HK < (d+1)/d", details=details)


def dimension_bound_rhs(d: int) -> Fraction:
    return 1 + Fraction(1, d * (factorial(d) * (d - 1) + 1) ** d)


def check_dimension_bound(R, **kw) -> BoundReport:
    """Formally unmixed, non-regular, ``d >= 2``:
    ``e_HK >= 1 + 1/(d (d!(d-1) + 1)^d)``."""
    bid = "dimension_4_10"
    A = _analysis(R, **kw)
    if not A.flag("unmixed_asserted"):
        return inconclusive(bid, "hypothesis not met: unmixedness not asserted")
    d, e = A.d, A.e
    if d < 2:
        return inconclusive(bid, "hypothesis not met: requires d >= 2")
    if e < 2:
        return inconclusive(bid, "check skipped: ring is regular")
    return lower_bound_report(bid, A.ehk, dimension_bound_rhs(d), A.tol,
                              hypotheses=("unmixed_asserted",),
                              note="e_HK >= 1 + 1/(d (d!(d-1)+1)^d)", details=(("d", d),))


def deduce_regularity_class(R, **kw) -> Certificate:
    """Strongest certificate the estimate supports by contraposition."""
    A = _analysis(R, **kw)
    e, d = A.e, A.d
    if e == 1:
        return Certificate("regular", premise="e(R) = 1 (unmixed)", citation="sandwich")
    est, tol = A.ehk, A.tol
    if A.estimate.truncated:
        return Certificate("none", premise="estimate truncated by the GB budget")
    if est + tol < Fraction(e, e - 1):
        premise = f"e_HK + tol = {float(est + tol):.6f} < e/(e-1) = {float(Fraction(e, e - 1)):.6f}"
        if A.flag("cm_asserted"):
            return Certificate("F-regular+Gorenstein", premise=premise,
                               citation="smallehk_3_5")
        if A.flag("unmixed_asserted") and d >= 2:
            return Certificate("F-regular+Gorenstein",
                               premise=premise + " (Cohen-Macaulay and F-rational first, "
                                                 "from unmixedness)",
                               citation="smallehk_3_5")
    if A.flag("gorenstein_asserted") and d > 1 and est + tol < Fraction(d + 1, d):
        return Certificate("F-regular",
                           premise=f"e_HK + tol < (d+1)/d = {float(Fraction(d + 1, d)):.6f}",
                           citation="gor_nonfreg_3_12")
    return NO_CERTIFICATE
