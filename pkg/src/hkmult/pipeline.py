"""Run every check on a presented ring and assemble a deterministic report."""

from __future__ import annotations

import csv
import io
import json
import time
from concurrent.futures import ProcessPoolExecutor
from contextlib import contextmanager
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import bounds as B
from .groebner import GBBudget, get_default_budget, set_default_budget
from .hilbert import dimension_and_multiplicity, random_linear_parameters
from .hk import associativity_check, default_emax
from .presentation import RingPresentation
from .radical import (
    build_radical_extension,
    check_nested_monotonicity_4_8,
    check_radical_bound_4_4,
    check_scaling_4_1,
    is_minimal_generator,
)
from .report import (
    BOUND_IDS,
    VIOLATED,
    BoundReport,
    Certificate,
    inconclusive,
    render_rational,
)

SCHEMA = "hkmult-report/1"


@dataclass(frozen=True)
class PipelineConfig:
    e_max: int | None = None
    tol: Fraction | None = None
    seed: int = 0
    gb_budget: int | None = None
    workers: int = 1
    radical_n: int = 2
    radical_emax: int = 2
    nested_exponent: int = 2        # q runs over 1, p, ..., p^nested_exponent
    nested_nmax: int = 3
    timings: bool = False

    def to_dict(self) -> dict:
        return {"e_max": self.e_max, "tol": render_rational(self.tol), "seed": self.seed,
                "gb_budget": self.gb_budget, "radical_n": self.radical_n,
                "radical_emax": self.radical_emax, "nested_exponent": self.nested_exponent,
                "nested_nmax": self.nested_nmax}


@dataclass
class RunReport:
    name: str
    p: int
    seed: int
    d: int | None = None
    e: int | None = None
    params: list | None = None
    params_source: str = "none"
    params_certified: bool = False
    samples: list = field(default_factory=list)
    estimate: Fraction | None = None
    error_heuristic: Fraction | None = None
    tolerance: Fraction | None = None
    truncated: bool = False
    bounds: list = field(default_factory=list)
    associativity: BoundReport | None = None
    certificates: list = field(default_factory=list)
    regularity_class: str = "none"
    substitutions: list = field(default_factory=list)
    notes: list = field(default_factory=list)
    timings: dict = field(default_factory=dict)

    def bound(self, bound_id: str) -> BoundReport:
        for r in self.bounds:
            if r.bound_id == bound_id:
                return r
        raise KeyError(bound_id)

    @property
    def violations(self) -> list[str]:
        out = [r.bound_id for r in self.bounds if r.status == VIOLATED]
        if self.associativity is not None and self.associativity.status == VIOLATED:
            out.append("associativity")
        return out

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "name": self.name,
            "p": self.p,
            "seed": self.seed,
            "d": self.d,
            "e": self.e,
            "params": self.params,
            "params_source": self.params_source,
            "params_certified": self.params_certified,
            "hk_samples": self.samples,
            "ehk_estimate": render_rational(self.estimate),
            "ehk_estimate_approx": None if self.estimate is None else round(float(self.estimate), 6),
            "error_heuristic": render_rational(self.error_heuristic),
            "tolerance": render_rational(self.tolerance),
            "truncated": self.truncated,
            "bounds": [r.to_dict() for r in self.bounds],
            "associativity": None if self.associativity is None else self.associativity.to_dict(),
            "certificates": [c.to_dict() for c in self.certificates],
            "regularity_class": self.regularity_class,
            "substitutions": self.substitutions,
            "notes": self.notes,
        }
        if timings:
            out["timings_s"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out


@contextmanager
def _budget(max_pairs: int | None):
    old = get_default_budget()
    if max_pairs is not None:
        set_default_budget(GBBudget(max_pairs=max_pairs))
    try:
        yield
    finally:
        set_default_budget(old)


class _Clock:
    def __init__(self, sink: dict):
        self.sink = sink

    @contextmanager
    def __call__(self, stage: str):
        t = time.perf_counter()
        try:
            yield
        finally:
            self.sink[stage] = self.sink.get(stage, 0.0) + time.perf_counter() - t


def _failed(bound_id: str, stage: str, exc: Exception) -> BoundReport:
    return inconclusive(bound_id, f"stage failed ({stage}): {exc}")


def _pick_generator(R, exclude=None):
    """First variable that is a minimal generator of m, outside ``exclude``."""
    for g in R.ring.gens():
        if R.is_zero(g) or not is_minimal_generator(R, g):
            continue
        if exclude is not None and exclude.contains(g):
            continue
        return g
    return None


def _radical_reports(pres: RingPresentation, R, A: B.RingAnalysis,
                     config: PipelineConfig) -> list[BoundReport]:
    ids = ("scaling_4_1", "radical_4_4")
    if not pres.flags.get("normal_asserted"):
        return [inconclusive(b, "hypothesis not met: normal (hence domain) not asserted")
                for b in ids]
    emax = min(A.estimate.samples[-1].e, config.radical_emax)
    n = config.radical_n
    out = []
    z = _pick_generator(R)
    if z is None:
        out.append(inconclusive(ids[0], "no variable is a minimal generator of m"))
    else:
        ext = build_radical_extension(R, z, n)
        out.append(check_scaling_4_1(ext, e_max=emax, d=A.d, tol=config.tol))
    if A.params is None:
        out.append(inconclusive(ids[1], "no parameter ideal"))
        return out
    z = _pick_generator(R, exclude=R.ideal(A.params))
    if z is None:
        out.append(inconclusive(ids[1], "no minimal generator outside the parameter ideal"))
    else:
        ext = build_radical_extension(R, z, n)
        out.append(check_radical_bound_4_4(ext, A.params, e_max=emax, d=A.d, tol=config.tol,
                                           estimate_R=A.estimate))
    return out


def run_pipeline(pres: RingPresentation, config: PipelineConfig | None = None) -> RunReport:
    """Compute ``(d, e)``, parameters, the HK estimate and every bound check.

    Stage failures become inconclusive entries; the report always lists each
    bound ID exactly once, in the canonical order.
    """
    config = config or PipelineConfig()
    rep = RunReport(pres.name, pres.p, config.seed)
    clock = _Clock(rep.timings)
    with _budget(config.gb_budget):
        _run(pres, config, rep, clock)
    return rep


def _run(pres, config, rep: RunReport, clock):
    R = pres.quotient_ring()
    params = pres.params(R.ring)
    rep.params_source = "supplied" if params is not None else "none"

    with clock("parameters"):
        if params is None:
            try:
                d, e = dimension_and_multiplicity(R)
                rng = np.random.default_rng(config.seed)
                params = random_linear_parameters(R, d, e, rng)
                if params is not None:
                    rep.params_source = "random"
                else:
                    rep.notes.append("random parameter search failed")
            except Exception as exc:
                rep.notes.append(f"parameter search skipped: {exc}")
    rep.params = None if params is None else [str(g) for g in params]

    e_max = config.e_max if config.e_max is not None else pres.emax
    if e_max is None:
        e_max = default_emax(pres.p)
    A = B.RingAnalysis(R, params, e_max=e_max, tol=config.tol, flags=pres.flags,
                       workers=config.workers)

    with clock("dimension"):
        try:
            rep.d, rep.e = A.dim_mult
            rep.params_certified = A.params_certified
        except Exception as exc:
            rep.notes.append(f"dimension/multiplicity failed: {exc}")

    estimate_error = None
    with clock("hk_estimate"):
        try:
            est = A.estimate if rep.d is not None else None
        except Exception as exc:
            est = None
            estimate_error = exc
    if est is not None:
        rep.samples = est.table()
        rep.estimate = est.estimate
        rep.error_heuristic = est.error_heuristic
        rep.tolerance = A.tol
        rep.truncated = est.truncated
    else:
        rep.notes.append(f"hk estimate failed: {estimate_error or 'no dimension'}")

    checks = {
        "sandwich": B.check_sandwich,
        "duality_3_2": B.check_duality_bound,
        "type_3_3": B.check_type_bound,
        "minmult_3_4": B.check_minimal_multiplicity,
        "smallehk_3_5": B.check_small_ehk_cm,
        "smallehk_3_6": B.check_small_ehk_unmixed,
        "embdim_3_7": B.check_embdim_bound,
        "graded_3_10": B.check_graded_bounds,
        "gor_nonfreg_3_12": B.check_gorenstein_non_fregular,
        "dimension_4_10": B.check_dimension_bound,
    }
    results: dict = {}
    for bid, fn in checks.items():
        with clock(bid):
            if est is None:
                results[bid] = inconclusive(bid, "stage failed (hk_estimate)")
                continue
            try:
                results[bid] = fn(A)
            except Exception as exc:
                results[bid] = _failed(bid, bid, exc)

    with clock("radical"):
        if est is None:
            for bid in ("scaling_4_1", "radical_4_4"):
                results[bid] = inconclusive(bid, "stage failed (hk_estimate)")
        else:
            try:
                for r in _radical_reports(pres, R, A, config):
                    results[r.bound_id] = r
            except Exception as exc:
                for bid in ("scaling_4_1", "radical_4_4"):
                    results.setdefault(bid, _failed(bid, "radical", exc))

    with clock("nested"):
        bid = "nested_4_8"
        if params is None:
            results[bid] = inconclusive(bid, "no parameter ideal")
        else:
            try:
                q_list = [pres.p ** k for k in range(config.nested_exponent + 1)]
                results[bid] = check_nested_monotonicity_4_8(
                    R, params[:-1], params[-1], config.nested_nmax, q_list)
            except Exception as exc:
                results[bid] = _failed(bid, "nested", exc)

    rep.bounds = [results[b] for b in BOUND_IDS]

    with clock("associativity"):
        if not pres.components:
            rep.associativity = inconclusive("associativity", "no components declared")
        elif est is None:
            rep.associativity = inconclusive("associativity", "stage failed (hk_estimate)")
        else:
            try:
                rep.associativity = associativity_check(
                    R, pres.component_ideals(R.ring),
                    unmixed=pres.flags.get("unmixed_asserted"), estimate=est)
            except Exception as exc:
                rep.associativity = _failed("associativity", "associativity", exc)

    with clock("certificates"):
        certs = []
        if est is not None and rep.e is not None:
            try:
                deduced = B.deduce_regularity_class(A)
            except Exception as exc:
                deduced = Certificate("none", premise=f"stage failed: {exc}")
        else:
            deduced = Certificate("none", premise="no estimate")
        rep.regularity_class = deduced.kind
        certs.append(deduced)
        seen = {(deduced.kind, deduced.citation)}
        for r in rep.bounds:
            c = r.certificate
            if c is not None and (c.kind, c.citation) not in seen:
                seen.add((c.kind, c.citation))
                certs.append(c)
        rep.certificates = certs

    subs = set(A.substitutions)
    for r in rep.bounds:
        subs.update(r.substitutions)
    rep.substitutions = sorted(subs)


def run_corpus(presentations, config: PipelineConfig | None = None,
               workers: int = 1) -> list[RunReport]:
    """Entries run concurrently when ``workers > 1``; results keep input order."""
    config = config or PipelineConfig()
    presentations = list(presentations)
    if workers > 1 and len(presentations) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            futures = [pool.submit(run_pipeline, pres, config) for pres in presentations]
            return [f.result() for f in futures]
    return [run_pipeline(pres, config) for pres in presentations]


def reports_to_json(reports, config: PipelineConfig) -> str:
    doc = {
        "schema": SCHEMA,
        "seed": config.seed,
        "config": config.to_dict(),
        "bound_ids": list(BOUND_IDS),
        "reports": [r.to_dict(timings=config.timings) for r in reports],
    }
    return json.dumps(doc, indent=2, ensure_ascii=False) + "\n"


CSV_COLUMNS = ("ring", "p", "bound_id", "status", "lhs", "rhs", "lhs_approx", "rhs_approx",
               "tolerance_used", "conditional", "certificate", "note")


def reports_to_csv(reports) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    for rep in reports:
        rows = list(rep.bounds)
        if rep.associativity is not None:
            rows.append(rep.associativity)
        for r in rows:
            d = r.to_dict()
            w.writerow([rep.name, rep.p, r.bound_id, r.status, d["lhs"], d["rhs"],
                        d["lhs_approx"], d["rhs_approx"], d["tolerance_used"],
                        int(r.conditional), "" if r.certificate is None else r.certificate.kind,
                        r.note])
    return buf.getvalue()
