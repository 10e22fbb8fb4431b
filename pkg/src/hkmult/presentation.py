"""The ``hkring v1`` text format for presented rings.

A file is a header line followed by directives, one per line::

    hkring v1
    name quadric_A1
    char 5
    vars x y z
    rel x*y - z^2
    flags homogeneous gorenstein_asserted unmixed_asserted normal_asserted
    params x+y, z

``vars`` accepts ``name:weight``.  ``rel`` may repeat.  Two further
directives are understood: ``component <mult>: <polys>`` declares a
top-dimensional minimal prime with its length multiplicity, and
``emax <N>`` sets a per-ring default for the Frobenius exponent.
``#`` starts a comment.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .gfpoly import (
    MAX_CHARACTERISTIC,
    PolynomialError,
    PolynomialRing,
    PolynomialSyntaxError,
    is_prime,
    parse_polynomial,
    parse_polynomial_list,
)
from .groebner import Ideal, QuotientRing

HEADER = "hkring v1"
FLAGS = ("homogeneous", "cm_asserted", "gorenstein_asserted", "unmixed_asserted",
         "normal_asserted")


class PresentationError(ValueError):
    def __init__(self, message: str, line: int | None = None, column: int | None = None):
        self.message = message
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


@dataclass
class RingPresentation:
    name: str
    p: int
    variables: tuple
    relations: tuple = ()
    weights: tuple | None = None
    flags: dict = field(default_factory=dict)
    parameter_ideal: tuple | None = None
    components: tuple = ()
    emax: int | None = None

    def __post_init__(self):
        self.variables = tuple(self.variables)
        if self.weights is None:
            self.weights = (1,) * len(self.variables)
        self.weights = tuple(self.weights)
        self.relations = tuple(self.relations)
        self.flags = {k: bool(self.flags.get(k, False)) for k in FLAGS}
        if self.parameter_ideal is not None:
            self.parameter_ideal = tuple(self.parameter_ideal)
        self.components = tuple((tuple(gens), int(mult)) for gens, mult in self.components)

    # --------------------------------------------------------------- builders
    def polynomial_ring(self) -> PolynomialRing:
        return PolynomialRing(self.p, self.variables, weights=self.weights)

    def quotient_ring(self) -> QuotientRing:
        ring = self.polynomial_ring()
        return QuotientRing(ring, [ring.parse(r) for r in self.relations], presentation=self)

    def params(self, ring: PolynomialRing | None = None):
        if self.parameter_ideal is None:
            return None
        ring = ring or self.polynomial_ring()
        return [ring.parse(g) for g in self.parameter_ideal]

    def component_ideals(self, ring: PolynomialRing | None = None) -> list:
        ring = ring or self.polynomial_ring()
        return [(Ideal(ring, [ring.parse(g) for g in gens]), mult)
                for gens, mult in self.components]

    def to_text(self) -> str:
        lines = [HEADER, f"name {self.name}", f"char {self.p}"]
        lines.append("vars " + " ".join(v if w == 1 else f"{v}:{w}"
                                        for v, w in zip(self.variables, self.weights)))
        lines += [f"rel {r}" for r in self.relations]
        on = [k for k in FLAGS if self.flags.get(k)]
        if on:
            lines.append("flags " + " ".join(on))
        if self.parameter_ideal is not None:
            lines.append("params " + ", ".join(self.parameter_ideal))
        for gens, mult in self.components:
            lines.append(f"component {mult}: " + ", ".join(gens))
        if self.emax is not None:
            lines.append(f"emax {self.emax}")
        return "\n".join(lines) + "\n"


def _strip_comment(line: str) -> str:
    i = line.find("#")
    return line if i < 0 else line[:i]


def _poly_error(exc: PolynomialError, lineno: int, offset: int) -> PresentationError:
    msg = str(exc).rsplit(" (column", 1)[0]
    col = getattr(exc, "column", None)
    return PresentationError(msg, lineno, None if col is None else col + offset)


def parse_presentation(text: str, name: str | None = None) -> RingPresentation:
    """Parse and validate a presentation; homogeneity is verified, not trusted."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    body = [(i + 1, _strip_comment(l)) for i, l in enumerate(lines)]
    body = [(i, l) for i, l in body if l.strip()]
    if not body or body[0][1].strip() != HEADER:
        raise PresentationError(f"missing header {HEADER!r}", body[0][0] if body else 1, 1)

    p = None
    variables: list = []
    weights: list = []
    rels: list = []
    flags: dict = {}
    params = None
    components: list = []
    emax = None
    seen_vars = False

    for lineno, raw in body[1:]:
        stripped = raw.lstrip()
        indent = len(raw) - len(stripped)
        key, _, rest = stripped.partition(" ")
        rest_col = indent + len(key) + 2          # 1-based column of ``rest``
        rest = rest.rstrip()
        if key == "name":
            name = rest.strip() or name
        elif key == "char":
            try:
                p = int(rest)
            except ValueError:
                raise PresentationError("characteristic must be an integer",
                                        lineno, rest_col) from None
            if not is_prime(p):
                raise PresentationError("characteristic must be prime", lineno, rest_col)
            if p > MAX_CHARACTERISTIC:
                raise PresentationError(f"characteristic exceeds {MAX_CHARACTERISTIC}",
                                        lineno, rest_col)
        elif key == "vars":
            if seen_vars:
                raise PresentationError("duplicate vars line", lineno, 1)
            seen_vars = True
            col = rest_col
            for tok in rest.split(" "):
                if not tok:
                    col += 1
                    continue
                v, sep, w = tok.partition(":")
                if v in variables:
                    raise PresentationError(f"duplicate variable {v!r}", lineno, col)
                try:
                    wt = int(w) if sep else 1
                except ValueError:
                    wt = 0
                if wt < 1:
                    raise PresentationError(f"weight of {v!r} must be a positive integer",
                                            lineno, col)
                variables.append(v)
                weights.append(wt)
                col += len(tok) + 1
            if not variables:
                raise PresentationError("no variables declared", lineno, rest_col)
        elif key == "rel":
            rels.append((lineno, rest, rest_col))
        elif key == "flags":
            for tok in rest.split():
                if tok not in FLAGS:
                    raise PresentationError(f"unknown flag {tok!r}", lineno,
                                            rest_col + rest.index(tok))
                flags[tok] = True
        elif key == "params":
            params = (lineno, rest, rest_col)
        elif key == "component":
            head, colon_, polys = rest.partition(":")
            try:
                mult = int(head)
            except ValueError:
                mult = 0
            if not colon_ or mult < 1:
                raise PresentationError("expected 'component <multiplicity>: <polys>'",
                                        lineno, rest_col)
            components.append((lineno, mult, polys, rest_col + len(head) + 1))
        elif key == "emax":
            try:
                emax = int(rest)
            except ValueError:
                emax = 0
            if emax < 1:
                raise PresentationError("emax must be a positive integer", lineno, rest_col)
        else:
            raise PresentationError(f"unknown directive {key!r}", lineno, indent + 1)

    if p is None:
        raise PresentationError("missing 'char' line")
    if not variables:
        raise PresentationError("missing 'vars' line")
    try:
        ring = PolynomialRing(p, variables, weights=weights)
    except PolynomialError as exc:
        raise PresentationError(str(exc)) from None

    relations = []
    for lineno, src, col in rels:
        try:
            f = parse_polynomial(src, ring)
        except PolynomialError as exc:
            raise _poly_error(exc, lineno, col - 1) from None
        if f.is_zero():
            raise PresentationError("relation is zero", lineno, col)
        if flags.get("homogeneous") and not f.is_homogeneous():
            raise PresentationError("inhomogeneous relation under homogeneous flag",
                                    lineno, col)
        relations.append(src.strip())

    param_list = None
    if params is not None:
        lineno, src, col = params
        try:
            parse_polynomial_list(src, ring)
        except PolynomialError as exc:
            raise _poly_error(exc, lineno, col - 1) from None
        param_list = tuple(s.strip() for s in src.split(","))

    comps = []
    for lineno, mult, src, col in components:
        try:
            parse_polynomial_list(src, ring)
        except PolynomialError as exc:
            raise _poly_error(exc, lineno, col) from None
        comps.append((tuple(s.strip() for s in src.split(",")), mult))

    return RingPresentation(name or "ring", p, tuple(variables), tuple(relations),
                            tuple(weights), flags, param_list, tuple(comps), emax)


def load_presentation(path) -> RingPresentation:
    from pathlib import Path
    path = Path(path)
    return parse_presentation(path.read_text(encoding="utf-8"), name=path.stem)
