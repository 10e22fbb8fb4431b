"""Built-in rings with known Hilbert-Kunz behaviour, as ``hkring v1`` text."""

from __future__ import annotations

from .presentation import RingPresentation, parse_presentation

DEFAULT_P = 5

_ALL = "homogeneous cm_asserted gorenstein_asserted unmixed_asserted"

# name -> (body lines after ``char``, odd characteristic only)
_ENTRIES = {
    "regular2": ("""\
vars x y
flags {all} normal_asserted
params x, y
""", False),
    "two_lines": ("""\
vars x y
rel x*y
flags {all}
params x+y
component 1: x
component 1: y
""", False),
    "double_line": ("""\
vars x y
rel y^2
flags {all}
params x
component 2: y
""", False),
    "cusp": ("""\
vars x:2 y:3
rel x^3 - y^2
flags {all}
params x
""", False),
    "quadric_A1": ("""\
vars x y z
rel x*y - z^2
flags {all} normal_asserted
params x+y, z
""", False),
    "quadric_d3": ("""\
vars x0 x1 x2 x3
rel x0^2 + x1^2 + x2^2 + x3^2
flags {all} normal_asserted
params x0, x1, x2
emax 2
""", True),
    "A2_surface": ("""\
vars x:3 y:3 z:2
rel x*y - z^3
flags {all} normal_asserted
params x+y, z
""", False),
    "A3_surface": ("""\
vars x:2 y:2 z
rel x*y - z^4
flags {all} normal_asserted
params x+y, z
""", False),
    "twisted_cubic_cone": ("""\
vars a b c d
rel b^2 - a*c
rel c^2 - b*d
rel a*d - b*c
flags homogeneous cm_asserted unmixed_asserted normal_asserted
params a, d
""", False),
}

NAMES = tuple(_ENTRIES)


class CorpusError(ValueError):
    pass


def corpus_text(name: str, p: int = DEFAULT_P) -> str:
    try:
        body, odd_only = _ENTRIES[name]
    except KeyError:
        raise CorpusError(f"unknown corpus entry {name!r}") from None
    if odd_only and p == 2:
        raise CorpusError("p must be odd for the quadric corpus entry")
    return f"hkring v1\nname {name}\nchar {p}\n" + body.format(all=_ALL)


def corpus_entry(name: str, p: int = DEFAULT_P) -> RingPresentation:
    return parse_presentation(corpus_text(name, p))


def corpus(p: int = DEFAULT_P, only=None) -> list[RingPresentation]:
    """Every entry valid in characteristic ``p`` (``only`` filters by name)."""
    names = NAMES if only is None else [only] if isinstance(only, str) else list(only)
    out = []
    for name in names:
        if name not in _ENTRIES:
            raise CorpusError(f"unknown corpus entry {name!r}")
        try:
            out.append(corpus_entry(name, p))
        except CorpusError:
            if only is not None:
                raise
    return out
