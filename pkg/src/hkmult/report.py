"""Report records shared by the HK engine, the bound checks and the pipeline."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

HOLDS = "holds"
VIOLATED = "violated"
INCONCLUSIVE = "inconclusive"

BOUND_IDS = (
    "sandwich",
    "duality_3_2",
    "type_3_3",
    "minmult_3_4",
    "smallehk_3_5",
    "smallehk_3_6",
    "embdim_3_7",
    "graded_3_10",
    "gor_nonfreg_3_12",
    "scaling_4_1",
    "radical_4_4",
    "nested_4_8",
    "dimension_4_10",
)

# relaxations recorded in reports
SUB_TIGHT_CLOSURE = "(x)* -> (x)"
SUB_STAR_LENGTH = "lambda* -> lambda"
SUB_FINITE_FIELD = "residue field F_p (not infinite / algebraically closed)"

DEFAULT_TOL_FLOOR = Fraction(1, 1000)


def rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, float):
        return Fraction(x).limit_denominator(10**9)
    return Fraction(x)


def render_rational(x) -> str | None:
    """Canonical ``num/den`` string (``None`` passes through)."""
    if x is None:
        return None
    x = rational(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class BoundReport:
    bound_id: str
    lhs: Fraction | None
    rhs: Fraction | None
    status: str
    tolerance_used: Fraction = Fraction(0)
    substitutions: tuple = ()
    hypotheses: tuple = ()
    conditional: bool = False
    note: str = ""
    details: tuple = ()
    certificate: "Certificate | None" = None

    @property
    def citation(self) -> str:
        return self.bound_id

    @property
    def margin(self) -> Fraction | None:
        if self.lhs is None or self.rhs is None:
            return None
        return self.lhs - self.rhs

    def to_dict(self) -> dict:
        return {
            "bound_id": self.bound_id,
            "citation": self.citation,
            "status": self.status,
            "lhs": render_rational(self.lhs),
            "rhs": render_rational(self.rhs),
            "lhs_approx": None if self.lhs is None else round(float(self.lhs), 6),
            "rhs_approx": None if self.rhs is None else round(float(self.rhs), 6),
            "tolerance_used": render_rational(self.tolerance_used),
            "conditional": self.conditional,
            "substitutions": list(self.substitutions),
            "hypotheses": list(self.hypotheses),
            "note": self.note,
            "details": {k: _plain(v) for k, v in self.details},
            "certificate": None if self.certificate is None else self.certificate.to_dict(),
        }


@dataclass(frozen=True)
class Certificate:
    kind: str            # "F-regular+Gorenstein", "F-regular", "CM+F-rational", "regular", "none"
    premise: str = ""
    citation: str = ""

    def to_dict(self) -> dict:
        return {"kind": self.kind, "premise": self.premise, "citation": self.citation}


NO_CERTIFICATE = Certificate("none")


def _plain(v):
    if isinstance(v, Fraction):
        return render_rational(v)
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, dict):
        return {str(k): _plain(x) for k, x in v.items()}
    return v


def inconclusive(bound_id: str, note: str, **kw) -> BoundReport:
    return BoundReport(bound_id, kw.pop("lhs", None), kw.pop("rhs", None),
                       INCONCLUSIVE, note=note, **kw)


def lower_bound_report(bound_id: str, estimate: Fraction, rhs: Fraction, tol: Fraction,
                       **kw) -> BoundReport:
    """``estimate >= rhs`` checked up to ``tol``."""
    status = HOLDS if estimate >= rhs - tol else VIOLATED
    return BoundReport(bound_id, estimate, rhs, status, tolerance_used=tol, **kw)
