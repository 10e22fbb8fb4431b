"""Colengths, Hilbert series of monomial ideals, dimension and multiplicity,
and invariants of Artinian reductions (Hilbert function, socle, type)."""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

import numpy as np

from .gfpoly import Polynomial, PolynomialRing, mono_divides
from .groebner import GroebnerBasis, Ideal, QuotientRing, colon, ideal_power


class InfiniteColengthError(ValueError):
    pass


class MultiplicityError(ValueError):
    pass


# ------------------------------------------------------- univariate helpers

def _padd(a: list, b: list) -> list:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] += c
    return out


def _shift(a: list, k: int) -> list:
    return [0] * k + a if a else []


def _pmul(a: list, b: list) -> list:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _trim(a: list) -> list:
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def _divide_one_minus_t(a: list) -> list:
    """Exact division by ``1 - t``: prefix sums."""
    out = []
    s = 0
    for c in a[:-1]:
        s += c
        out.append(s)
    return out


def minimalize(monomials) -> list:
    """Drop every monomial divisible by another one in the list."""
    ms = sorted(set(map(tuple, monomials)), key=sum)
    out: list = []
    for m in ms:
        if not any(mono_divides(g, m) for g in out):
            out.append(m)
    return out


# --------------------------------------------------------- Hilbert series

@dataclass(frozen=True)
class HilbertSeries:
    """``numerator(t) / (1 - t)^ambient_vars``."""

    numerator: tuple
    ambient_vars: int

    @property
    def reduced_numerator(self) -> tuple:
        num = _trim(list(self.numerator))
        if not num:
            return ()
        while sum(num) == 0:
            num = _trim(_divide_one_minus_t(num))
        return tuple(num)

    @property
    def dimension(self) -> int:
        num = _trim(list(self.numerator))
        if not num:
            return -1
        k = 0
        while sum(num) == 0:
            num = _trim(_divide_one_minus_t(num))
            k += 1
        return self.ambient_vars - k

    @property
    def multiplicity(self) -> int:
        return sum(self.reduced_numerator)

    def coefficients(self, upto: int) -> list[int]:
        """Power-series coefficients of ``t^0 .. t^upto``."""
        series = list(self.numerator) + [0] * (upto + 1)
        series = series[:upto + 1]
        for _ in range(self.ambient_vars):
            acc = 0
            for i, c in enumerate(series):
                acc += c
                series[i] = acc
        return series


def _hs_numerator(gens: tuple, n: int) -> tuple:
    return _hs_rec(tuple(sorted(gens)), n)


@lru_cache(maxsize=200_000)
def _hs_rec(gens: tuple, n: int) -> tuple:
    if not gens:
        return (1,)
    if any(not any(g) for g in gens):
        return ()
    # pairwise coprime generators: Koszul complex is exact
    used = [0] * n
    simple = True
    for g in gens:
        for i, e in enumerate(g):
            if e:
                if used[i]:
                    simple = False
                    break
                used[i] = 1
        if not simple:
            break
    if simple:
        num = [1]
        for g in gens:
            d = sum(g)
            num = _padd(num, _shift([-c for c in num], d))
        return tuple(num)
    # pivot on a power of the variable occurring in most non-pure generators
    counts = [0] * n
    for g in gens:
        if sum(1 for e in g if e) > 1:
            for i, e in enumerate(g):
                if e:
                    counts[i] += 1
    var = max(range(n), key=lambda i: counts[i])
    exps = sorted(g[var] for g in gens if g[var] and sum(1 for e in g if e) > 1)
    e = exps[len(exps) // 2]
    pivot = tuple(e if i == var else 0 for i in range(n))
    plus = minimalize([g for g in gens if not mono_divides(pivot, g)] + [pivot])
    quot = minimalize([tuple(max(x - y, 0) for x, y in zip(g, pivot)) for g in gens])
    left = list(_hs_rec(tuple(sorted(plus)), n))
    right = list(_hs_rec(tuple(sorted(quot)), n))
    return tuple(_trim(_padd(left, _shift(right, e))))


def hilbert_series_monomial(leading_monomials: Sequence, n: int) -> HilbertSeries:
    """Hilbert series of ``k[x_1..x_n]/(leading_monomials)`` (pivot recursion)."""
    gens = minimalize(leading_monomials)
    return HilbertSeries(_hs_numerator(tuple(gens), n), n)


def hilbert_series(ideal: Ideal) -> HilbertSeries:
    gb = ideal.groebner_basis()
    return hilbert_series_monomial(gb.leading_monomials, ideal.ring.nvars)


# ------------------------------------------------------------------ colength

def standard_monomial_bounds(lms: Sequence, n: int) -> list[int]:
    """Pure-power exponent per variable; raises if some variable has none."""
    bounds = [None] * n
    for m in lms:
        support = [i for i, e in enumerate(m) if e]
        if len(support) == 1:
            i = support[0]
            if bounds[i] is None or m[i] < bounds[i]:
                bounds[i] = m[i]
        elif not support:
            return [0] * n
    if any(b is None for b in bounds):
        raise InfiniteColengthError("colength is infinite")
    return bounds


def colength_of_basis(gb: GroebnerBasis) -> int:
    n = gb.ring.nvars
    if not gb.leading_monomials:
        raise InfiniteColengthError("colength is infinite")
    if gb.is_unit():
        return 0
    standard_monomial_bounds(gb.leading_monomials, n)
    return hilbert_series_monomial(gb.leading_monomials, n).multiplicity


def colength(ideal: Ideal) -> int:
    """``dim_k k[x]/ideal`` = number of standard monomials; must be finite."""
    return colength_of_basis(ideal.working_basis())


def standard_monomials(gb: GroebnerBasis) -> list:
    """All standard monomials of an Artinian quotient (box enumeration)."""
    n = gb.ring.nvars
    if gb.is_unit():
        return []
    bounds = standard_monomial_bounds(gb.leading_monomials, n)
    lms = gb.leading_monomials
    return [m for m in np.ndindex(*bounds)
            if not any(mono_divides(g, m) for g in lms)]


# ----------------------------------------------------- dimension, multiplicity

def is_homogeneous_ideal(ideal: Ideal) -> bool:
    return all(g.is_homogeneous() for g in ideal.gens)


def krull_dimension(R: QuotientRing) -> int:
    """Dimension of ``k[x]/I`` from the initial ideal (valid for any order)."""
    gb = R.gb
    if gb.is_unit():
        return -1
    return hilbert_series_monomial(gb.leading_monomials, R.ring.nvars).dimension


def dimension_and_multiplicity(R: QuotientRing) -> tuple[int, int]:
    """``(d, e)`` read off the Hilbert series of the defining ideal."""
    ring = R.ring
    if any(w != 1 for w in ring.weights) or not is_homogeneous_ideal(R.defining):
        raise MultiplicityError(
            "multiplicity requires homogeneous presentation or explicit parameter ideal")
    gb = R.gb
    if gb.is_unit():
        raise MultiplicityError("the zero ring has no multiplicity")
    hs = hilbert_series_monomial(gb.leading_monomials, ring.nvars)
    return hs.dimension, hs.multiplicity


def embedding_dimension(R: QuotientRing) -> int:
    """``mu(m)``: variables minus the rank of the linear parts of the relations."""
    from .gfpoly import linear_part_rank
    return R.ring.nvars - linear_part_rank(R.defining.gens)


# ---------------------------------------------------------- Artinian profile

@dataclass(frozen=True)
class ArtinianProfile:
    colength: int
    hilbert_function: tuple
    socle_dim: int

    @property
    def top_degree(self) -> int:
        return len(self.hilbert_function) - 1


def _params_ideal(R: QuotientRing, params) -> Ideal:
    if isinstance(params, Ideal):
        params = params.gens
    return R.ideal(params)


def artinian_profile(R: QuotientRing, params) -> ArtinianProfile:
    """Invariants of ``A = R/(params)``: length, graded-piece dimensions of
    the associated graded ring of ``A``, and socle dimension (CM type)."""
    base = _params_ideal(R, params)
    total = colength(base)
    m = R.maximal_ideal()
    lengths = [0]
    i = 1
    while lengths[-1] < total:
        lengths.append(colength(base + ideal_power(m, i)))
        if lengths[-1] == lengths[-2]:
            break
        i += 1
    hf = tuple(b - a for a, b in zip(lengths, lengths[1:]))
    socle = total - colength(colon(base, m))
    return ArtinianProfile(total, hf, socle)


def certify_minimal_reduction(R: QuotientRing, params, e: int | None = None,
                              d: int | None = None) -> bool:
    """True iff ``params`` has ``d`` elements and ``lambda(R/params) = e(R)``."""
    gens = params.gens if isinstance(params, Ideal) else list(params)
    if e is None or d is None:
        d0, e0 = dimension_and_multiplicity(R)
        d = d0 if d is None else d
        e = e0 if e is None else e
    if len(gens) != d:
        return False
    try:
        return colength(_params_ideal(R, gens)) == e
    except InfiniteColengthError:
        return False


def random_linear_parameters(R: QuotientRing, d: int, e: int, rng,
                             retries: int = 32) -> list[Polynomial] | None:
    """Seeded search for ``d`` linear forms forming a minimal reduction."""
    ring = R.ring
    p = ring.p
    for _ in range(retries):
        forms = []
        for _ in range(d):
            coeffs = rng.integers(0, p, size=ring.nvars)
            forms.append(sum((ring.gen(i) * int(c) for i, c in enumerate(coeffs)),
                             ring.zero()))
        if any(f.is_zero() for f in forms):
            continue
        if certify_minimal_reduction(R, forms, e=e, d=d):
            return forms
    return None
