"""Radical extensions ``S = R[v]/(v^n - z)`` and the comparison laws between
Hilbert-Kunz multiplicities of ``R`` and ``S``."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from fractions import Fraction
from math import ceil

from .gfpoly import Polynomial, PolynomialRing
from .groebner import Ideal, QuotientRing, colon, frobenius_power, ideal_power
from .hilbert import (
    InfiniteColengthError,
    MultiplicityError,
    colength,
    dimension_and_multiplicity,
    is_homogeneous_ideal,
)
from .hk import HKEstimate, hk_estimate, hk_function
from .report import (
    DEFAULT_TOL_FLOOR,
    HOLDS,
    SUB_FINITE_FIELD,
    SUB_TIGHT_CLOSURE,
    VIOLATED,
    BoundReport,
    inconclusive,
)


class RadicalExtensionError(ValueError):
    pass


@dataclass
class RadicalExtension:
    base: QuotientRing
    z: Polynomial
    n: int
    extended: QuotientRing
    v: Polynomial | None
    b_assumed: int | None
    graded: bool
    hypotheses: tuple = ()

    @property
    def b(self) -> int:
        """Degree used in bounds: ``b_assumed`` or the upper bound ``n``."""
        return self.b_assumed if self.b_assumed is not None else self.n

    def lift(self, J) -> Ideal:
        """Extension ``J S`` of an ideal of the base ambient ring."""
        gens = J.gens if isinstance(J, Ideal) else J
        ring = self.extended.ring
        return Ideal(ring, [ring.convert(g) if isinstance(g, Polynomial) else ring.parse(g)
                            for g in gens])


def _fresh_variable(names, stem="v") -> str:
    if stem not in names:
        return stem
    k = 1
    while f"{stem}{k}" in names:
        k += 1
    return f"{stem}{k}"


def is_minimal_generator(R: QuotientRing, z: Polynomial) -> bool:
    """``z`` in ``m`` but not in ``m^2 + I``."""
    if any(not any(m) for m, _ in z):
        return False
    m2 = R.ideal(ideal_power(R.maximal_ideal(), 2))
    return not m2.contains(z)


def _flags(R: QuotientRing) -> dict:
    pres = R.presentation
    return dict(pres.flags) if pres is not None else {}


class _Presented:
    """Minimal presentation record for derived rings (flags and name)."""

    def __init__(self, name: str, flags: dict, params=None, emax=None):
        self.name = name
        self.flags = flags
        self.params = params
        self.emax = emax
        self.components = ()


def build_radical_extension(R: QuotientRing, z, n: int, var: str | None = None,
                            normal: bool | None = None) -> RadicalExtension:
    """Adjoin ``v`` with ``v^n = z``.

    ``b = [Q(S):Q(R)]`` is recorded as ``n`` only when ``R`` is asserted
    normal and ``z`` is verified to be a minimal generator of ``m``.
    """
    ring = R.ring
    if isinstance(z, str):
        z = ring.parse(z)
    else:
        z = ring.convert(z)
    if n < 1:
        raise RadicalExtensionError("root degree must be positive")
    if R.is_zero(z):
        raise RadicalExtensionError("z is zero in R")
    flags = _flags(R)
    if normal is None:
        normal = bool(flags.get("normal_asserted"))
    if n == 1:
        return RadicalExtension(R, z, 1, R, None, 1, True, ("n = 1: S = R",))
    minimal = is_minimal_generator(R, z)
    hyps = []
    if normal and minimal:
        b = n
        hyps.append("b = n: R normal (asserted), z minimal generator (verified)")
    else:
        b = None
        hyps.append("b <= n only: " + ("z not a minimal generator" if not minimal
                                      else "normality not asserted"))
    name = _fresh_variable(ring.variables)
    if var is not None:
        if var in ring.variables:
            raise RadicalExtensionError(f"variable {var!r} already in use")
        name = var
    graded = (z.is_homogeneous() and z.weighted_degree() % n == 0
              and flags.get("homogeneous", is_homogeneous_ideal(R.defining)))
    weights = ring.weights + ((z.weighted_degree() // n) if graded else 1,)
    big = PolynomialRing(ring.field, ring.variables + (name,), ring.order, weights)
    v = big.gen(name)
    zz = big.convert(z)
    defining = [big.convert(g) for g in R.defining.gens] + [v ** n - zz]
    ext_flags = {
        "homogeneous": graded,
        # S is free over R with Gorenstein closed fibre k[v]/(v^n)
        "cm_asserted": flags.get("cm_asserted", False),
        "gorenstein_asserted": flags.get("gorenstein_asserted", False),
        "unmixed_asserted": flags.get("cm_asserted", False) and flags.get("unmixed_asserted", False),
        "normal_asserted": False,
    }
    base_name = getattr(R.presentation, "name", "R")
    pres = _Presented(f"{base_name}[{name}^{n}={z}]", ext_flags)
    S = QuotientRing(big, defining, presentation=pres)
    if not graded:
        hyps.append("extension not graded (n does not divide deg z): colength-only mode")
    return RadicalExtension(R, z, n, S, v, b, graded, tuple(hyps))


def _dimension(R: QuotientRing, d: int | None) -> int:
    if d is not None:
        return d
    from .hk import resolve_dimension
    return resolve_dimension(R)


def check_scaling_4_1(ext: RadicalExtension, J=None, e_max: int | None = None,
                      d: int | None = None, tol=None,
                      tol_floor: Fraction = DEFAULT_TOL_FLOOR) -> BoundReport:
    """``e_HK(J; R) = e_HK(JS; S) / b`` (residue fields agree)."""
    bid = "scaling_4_1"
    R, S = ext.base, ext.extended
    if J is None:
        J = R.maximal_ideal()
    elif not isinstance(J, Ideal):
        J = Ideal(R.ring, J)
    d = _dimension(R, d)
    JS = ext.lift(J)
    try:
        est_R = hk_estimate(R, J, e_max=e_max, d=d)
        est_S = hk_estimate(S, JS, e_max=e_max, d=d)
    except InfiniteColengthError as exc:
        return inconclusive(bid, f"colength infinite: {exc}")
    b = ext.b
    per_q = []
    exact = True
    for sr, ss in zip(est_R.samples, est_S.samples):
        equal = ss.colength == b * sr.colength
        exact &= equal
        per_q.append([sr.q, sr.colength, ss.colength, equal])
    if tol is None:
        tol = est_R.tolerance(tol_floor) + est_S.tolerance(tol_floor) / b
    tol = Fraction(tol)
    lhs = est_R.estimate
    rhs = est_S.estimate / b
    hyps = ("local domains (asserted)",) + ext.hypotheses
    if ext.b_assumed is None:
        # only b <= n is known: e_HK(J) = e_HK(JS)/b >= e_HK(JS)/n
        status = HOLDS if lhs >= rhs - tol else VIOLATED
        note = "one-sided: e_HK(J) >= e_HK(JS)/n"
    else:
        status = HOLDS if abs(lhs - rhs) <= tol else VIOLATED
        note = "e_HK(J) = e_HK(JS)/b"
    return BoundReport(bid, lhs, rhs, status, tolerance_used=tol, hypotheses=hyps,
                       substitutions=(SUB_FINITE_FIELD,), note=note,
                       details=(("b", b), ("n", ext.n), ("per_q", per_q),
                                ("exact_at_every_q", exact)))


def check_radical_bound_4_4(ext: RadicalExtension, params, e_max: int | None = None,
                            d: int | None = None, tol=None, estimate_R: HKEstimate | None = None,
                            tol_floor: Fraction = DEFAULT_TOL_FLOOR) -> BoundReport:
    """``e_HK(R) >= (b(n-1)e + n e_HK(S)) / (b(a(n-1)+1))`` with ``a`` replaced
    by ``lambda(R/(x)) >= lambda(R/(x)*)``."""
    bid = "radical_4_4"
    R, S, n = ext.base, ext.extended, ext.n
    if not isinstance(params, Ideal):
        params = Ideal(R.ring, params)
    base = R.ideal(params)
    if base.contains(ext.z):
        raise RadicalExtensionError("z lies in the parameter ideal")
    d = _dimension(R, d)
    if len(params.gens) != d:
        return inconclusive(bid, "parameter ideal does not have d generators")
    try:
        e = colength(base)
    except InfiniteColengthError:
        return inconclusive(bid, "parameters do not generate an m-primary ideal")
    try:
        e_R = dimension_and_multiplicity(R)[1]
        if e_R != e:
            return inconclusive(bid, "parameter ideal not certified as a minimal reduction",
                                details=(("lambda(R/params)", e), ("e", e_R)))
    except MultiplicityError:
        pass
    a = e
    b = ext.b
    est_R = estimate_R or hk_estimate(R, e_max=e_max, d=d)
    est_S = hk_estimate(S, e_max=e_max, d=d)
    denom = b * (a * (n - 1) + 1)
    rhs = Fraction(b * (n - 1) * e, denom) + n * est_S.estimate / denom
    if tol is None:
        tol = est_R.tolerance(tol_floor) + Fraction(n, denom) * est_S.tolerance(tol_floor)
    tol = Fraction(tol)
    status = HOLDS if est_R.estimate >= rhs - tol else VIOLATED
    hyps = ("complete local domain (asserted)", "z not in (x) verified; z not in (x)* assumed")
    hyps += ext.hypotheses
    if ext.b_assumed is None:
        hyps += ("b unknown: b = n used (right-hand side decreases in b)",)
    return BoundReport(bid, est_R.estimate, rhs, status, tolerance_used=tol,
                       substitutions=(SUB_TIGHT_CLOSURE + " in a = lambda(R/(x)*)",
                                      SUB_FINITE_FIELD),
                       hypotheses=hyps,
                       note="e_HK(R) >= (b(n-1)e + n e_HK(S))/(b(a(n-1)+1))",
                       details=(("e", e), ("a", a), ("b", b), ("n", n),
                                ("ehk_S", est_S.estimate), ("ehk_S_table", est_S.table())))


def nested_colon_colength(R: QuotientRing, I: Ideal, v: Polynomial, n: int, q: int) -> int:
    """``lambda(R / ((I, v^n)^[q] : v^((n-1)q)))``."""
    return colength(nested_colon_ideal(R, I, v, n, q))


def nested_colon_ideal(R: QuotientRing, I: Ideal, v: Polynomial, n: int, q: int) -> Ideal:
    base = R.ideal(frobenius_power(Ideal(R.ring, list(I.gens) + [v ** n]), q))
    if n == 1:
        return base
    return colon(base, Ideal(R.ring, [v ** ((n - 1) * q)]))


def check_nested_monotonicity_4_8(R: QuotientRing, I, v, n_max: int = 3,
                                  q_list=None) -> BoundReport:
    """For every ``q`` and ``1 <= n < n_max``, exactly (no tolerance):
    ``(I,v^n)^[q] : v^((n-1)q)  ⊆  (I,v^(n+1))^[q] : v^(nq)`` and hence
    ``lambda(R/first) >= lambda(R/second)``."""
    bid = "nested_4_8"
    ring = R.ring
    if not isinstance(I, Ideal):
        I = Ideal(ring, I)
    if isinstance(v, str):
        v = ring.parse(v)
    if q_list is None:
        q_list = [1, R.p]
    rows = []
    ok = True
    worst = None
    try:
        for q in q_list:
            ideals = {k: nested_colon_ideal(R, I, v, k, q) for k in range(1, n_max + 1)}
            lengths = {k: colength(J) for k, J in ideals.items()}
            for k in range(1, n_max):
                inside = ideals[k].issubset(ideals[k + 1])
                diff = lengths[k] - lengths[k + 1]
                ok &= inside and diff >= 0
                worst = diff if worst is None else min(worst, diff)
                rows.append([q, k, lengths[k], lengths[k + 1], inside])
    except InfiniteColengthError as exc:
        return inconclusive(bid, f"(I, v) not m-primary: {exc}")
    return BoundReport(bid, Fraction(worst if worst is not None else 0), Fraction(0),
                       HOLDS if ok else VIOLATED, tolerance_used=Fraction(0),
                       note="colon-colength differences are non-negative at every (q, n)",
                       details=(("I", [str(g) for g in I.gens]), ("v", str(v)),
                                ("rows[q, n, len_n, len_n+1, inclusion]", rows)))


# -------------------------------------------------------------------- tower

def socle_element(R: QuotientRing, params) -> Polynomial | None:
    """A generator of ``((x):m)`` outside ``(x)`` (modulo the relations)."""
    base = R.ideal(params)
    soc = colon(base, R.maximal_ideal())
    gb = base.groebner_basis()
    cands = [gb.reduce(g) for g in soc.groebner_basis().elements]
    cands = [c for c in cands if not c.is_zero()]
    if not cands:
        return None
    return min(cands, key=lambda f: (f.degree(), str(f)))


def socle_degree_index(R: QuotientRing, params, u: Polynomial) -> int:
    """``max{i : u in m^i + (params)}``."""
    m = R.maximal_ideal()
    i = 0
    while True:
        J = R.ideal(list(ideal_power(m, i + 1).gens) + list(params))
        if not J.contains(u):
            return i
        i += 1


def run_tower(R: QuotientRing, gens, n: int, depth: int, e_max: int | None = None,
              d: int | None = None, tol=None, tol_floor: Fraction = DEFAULT_TOL_FLOOR):
    """Adjoin ``v_i = y_i^(1/n)`` one at a time and check at each step
    ``delta_(i-1) >= delta_i / (e(n-1)+1)`` where ``e_HK(R_i) = 1 + delta_i``.

    Returns ``(reports, info)``; ``info`` carries the socle element ``u``,
    ``r`` and per-step data.
    """
    ring = R.ring
    ys = [ring.parse(g) if isinstance(g, str) else ring.convert(g) for g in gens]
    info: dict = {"steps": [], "truncated": None}
    if depth <= 0:
        return [], info
    d = _dimension(R, d)
    if depth > len(ys):
        raise ValueError("tower depth exceeds the number of generators")
    if len(ys) < d:
        raise ValueError("need at least d generators")
    try:
        e0 = dimension_and_multiplicity(R)[1]
    except MultiplicityError:
        e0 = colength(R.ideal(ys[:d]))
    params0 = ys[:d]
    if colength(R.ideal(params0)) != e0:
        info["truncated"] = "y_1..y_d is not a minimal reduction"
        return [], info
    # general position: every d-subset should be a minimal reduction
    failing = []
    for subset in combinations(range(len(ys)), d):
        try:
            ok = colength(R.ideal([ys[j] for j in subset])) == e0
        except InfiniteColengthError:
            ok = False
        if not ok:
            failing.append([j + 1 for j in subset])
    info["general_position_failures"] = failing
    u = socle_element(R, params0)
    if u is not None:
        r = socle_degree_index(R, params0, u)
        info["socle_element"] = str(u)
        info["r"] = r
        info["n_suggested"] = ceil(d / r) if r else None

    reports = []
    current = R
    vs: list = []
    est_prev = hk_estimate(R, e_max=e_max, d=d)
    info["steps"].append({"i": 0, "e": e0, "ehk": est_prev.estimate,
                          "table": est_prev.table()})
    for i in range(1, depth + 1):
        y = ys[i - 1]
        try:
            ext = build_radical_extension(current, y, n, var=_fresh_variable(
                current.ring.variables, f"v{i}"))
        except RadicalExtensionError as exc:
            info["truncated"] = f"step {i}: {exc}"
            break
        S = ext.extended
        vs.append(S.ring.convert(ext.v) if ext.v is not None else None)
        lifted_vs = [S.ring.convert(v) for v in vs]
        rest = [S.ring.convert(g) for g in ys[i:d]]
        params_i = lifted_vs + rest
        if len(params_i) != d:
            params_i = params_i[:d]
        e_i = colength(S.ideal(params_i))
        e_note = "e(R_i) = lambda(R_i/params_i)"
        if ext.graded and all(w == 1 for w in S.ring.weights):
            try:
                hs_e = dimension_and_multiplicity(S)[1]
                e_note += f"; Hilbert series gives {hs_e}"
                if hs_e != e_i:
                    e_note += " (mismatch)"
            except MultiplicityError:
                pass
        est_i = hk_estimate(S, e_max=e_max, d=d)
        delta_prev = est_prev.estimate - 1
        delta_i = est_i.estimate - 1
        coef = Fraction(1, e0 * (n - 1) + 1)
        step_tol = Fraction(tol) if tol is not None else (
            est_prev.tolerance(tol_floor) + coef * est_i.tolerance(tol_floor))
        rhs = coef * delta_i
        constant = e_i == e0
        status = HOLDS if delta_prev >= rhs - step_tol and constant else VIOLATED
        reports.append(BoundReport(
            "tower_step", delta_prev, rhs, status, tolerance_used=step_tol,
            hypotheses=ext.hypotheses + ("R_(i-1) F-regular (assumed)",),
            substitutions=(SUB_FINITE_FIELD,),
            note=f"step {i}: delta_(i-1) >= delta_i/(e(n-1)+1), e constant",
            details=(("i", i), ("e_i", e_i), ("e_0", e0), ("e_check", e_note),
                     ("delta_i", delta_i), ("params_i", [str(g) for g in params_i]))))
        info["steps"].append({"i": i, "e": e_i, "ehk": est_i.estimate,
                              "table": est_i.table(), "graded": ext.graded})
        current, est_prev = S, est_i
    return reports, info


def free_extension_lengths(ext: RadicalExtension, params_rest) -> tuple[int, int]:
    """``(n * lambda(S/(x', v)), lambda(S/(x', z)))``; equal for free extensions."""
    S = ext.extended
    rest = [S.ring.convert(g) if isinstance(g, Polynomial) else S.ring.parse(g)
            for g in params_rest]
    zS = S.ring.convert(ext.z)
    left = ext.n * colength(S.ideal(rest + [ext.v]))
    right = colength(S.ideal(rest + [zS]))
    return left, right
