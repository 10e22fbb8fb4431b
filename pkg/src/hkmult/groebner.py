"""Buchberger's algorithm and ideal operations built on it.

All heavy lifting happens on raw ``{monomial: coeff}`` dicts; the public
surface wraps results back into :class:`~hkmult.gfpoly.Polynomial`.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .gfpoly import (
    BlockOrder,
    Grevlex,
    GREVLEX,
    MonomialOrder,
    Polynomial,
    PolynomialError,
    PolynomialRing,
    is_power_of,
    mono_coprime,
    mono_div,
    mono_divides,
    mono_lcm,
    MAX_FROBENIUS_Q,
)


@dataclass(frozen=True)
class GBBudget:
    """Resource limits for one Gröbner basis computation (``None`` = unlimited)."""

    max_pairs: int | None = None
    max_degree: int | None = None
    max_basis: int | None = None


_default_budget = GBBudget()


def set_default_budget(budget: GBBudget) -> None:
    global _default_budget
    _default_budget = budget


def get_default_budget() -> GBBudget:
    return _default_budget


class GBBudgetExceeded(RuntimeError):
    """Carries the (non-reduced) partial basis reached before the limit hit."""

    def __init__(self, message: str, partial: list[Polynomial]):
        super().__init__(f"GB budget exceeded: {message}")
        self.partial = partial


# ----------------------------------------------------------------- kernels

def _find_reducer(m, basis):
    for b in basis:
        lm = b[0]
        for x, y in zip(lm, m):
            if x > y:
                break
        else:
            return b
    return None


def _reduce(f: dict, basis: list, desc_key, p: int, full: bool = True) -> dict:
    """Normal form of ``f`` modulo ``basis`` (monic ``(lm, tail)`` pairs).

    ``tail`` lists the non-leading terms as ``(monomial, coeff)``.  With
    ``full=False`` only leading terms are reduced.
    """
    f = dict(f)
    heap = [(desc_key(m), m) for m in f]
    heapq.heapify(heap)
    rem = {}
    heappop, heappush = heapq.heappop, heapq.heappush
    while heap:
        _, m = heappop(heap)
        c = f.pop(m, None)
        if c is None:
            continue
        b = _find_reducer(m, basis)
        if b is None:
            rem[m] = c
            if not full:
                rem.update(f)
                return rem
            continue
        lm, tail = b
        shift = tuple(x - y for x, y in zip(m, lm))
        for tm, tc in tail:
            t = tuple(x + y for x, y in zip(tm, shift))
            old = f.get(t)
            if old is None:
                v = -c * tc % p
                if v:
                    f[t] = v
                    heappush(heap, (desc_key(t), t))
            else:
                v = (old - c * tc) % p
                if v:
                    f[t] = v
                else:
                    del f[t]
    return rem


def _make_element(f: dict, key, p: int):
    """Monic ``(lm, tail)`` form of a nonzero dict polynomial."""
    lm = max(f, key=key)
    inv = pow(f[lm], -1, p)
    tail = [(m, c * inv % p) for m, c in f.items() if m != lm]
    tail.sort(key=lambda t: key(t[0]), reverse=True)
    return lm, tail


def _spoly(a, b, p: int) -> dict:
    lma, ta = a
    lmb, tb = b
    l = mono_lcm(lma, lmb)
    sa = mono_div(l, lma)
    sb = mono_div(l, lmb)
    out: dict = {}
    for m, c in ta:
        t = tuple(x + y for x, y in zip(m, sa))
        out[t] = c
    for m, c in tb:
        t = tuple(x + y for x, y in zip(m, sb))
        v = (out.get(t, 0) - c) % p
        if v:
            out[t] = v
        else:
            out.pop(t, None)
    return out


def _as_dict(elt) -> dict:
    lm, tail = elt
    d = {lm: 1}
    d.update(tail)
    return d


def _buchberger_raw(polys: Sequence[dict], order: MonomialOrder, p: int, nvars: int,
                    budget: GBBudget) -> list:
    """Reduced Gröbner basis of nonzero dict polynomials, as monic elements."""
    key, dkey = order.key, order.desc_key
    elements: list = []     # every basis element ever added (by index)
    active: list[int] = []  # indices forming the current basis
    pairs: dict = {}        # (i, j) -> lcm
    heap: list = []
    counter = itertools.count()
    one = (0,) * nvars

    def partial():
        return [_as_dict(elements[i]) for i in active]

    def add(f: dict) -> bool:
        elt = _make_element(f, key, p)
        if elt[0] == one:
            return True
        h = len(elements)
        elements.append(elt)
        lmh = elt[0]
        # Gebauer-Moeller update
        cand = [(g, mono_lcm(lmh, elements[g][0])) for g in active]
        kept = []
        for idx, (g1, l1) in enumerate(cand):
            if mono_coprime(lmh, elements[g1][0]):
                kept.append((g1, l1, True))
                continue
            redundant = False
            for g2, l2 in cand[idx + 1:]:
                if mono_divides(l2, l1):
                    redundant = True
                    break
            if not redundant:
                for g2, l2, _ in kept:
                    if mono_divides(l2, l1):
                        redundant = True
                        break
            if not redundant:
                kept.append((g1, l1, False))
        for (i, j), l in list(pairs.items()):
            if mono_divides(lmh, l):
                li = mono_lcm(elements[i][0], lmh)
                lj = mono_lcm(elements[j][0], lmh)
                if li != l and lj != l:
                    del pairs[(i, j)]
        for g, l, coprime in kept:
            if not coprime:
                pairs[(g, h)] = l
                heapq.heappush(heap, (key(l), next(counter), g, h))
        active[:] = [g for g in active if not mono_divides(lmh, elements[g][0])]
        active.append(h)
        if budget.max_basis is not None and len(active) > budget.max_basis:
            raise GBBudgetExceeded(f"basis size above {budget.max_basis}",
                                   partial())
        return False

    def reducers():
        return [elements[i] for i in active]

    for f in sorted(polys, key=lambda f: key(max(f, key=key))):
        r = _reduce(f, reducers(), dkey, p)
        if r and add(r):
            return [(one, [])]

    processed = 0
    while heap:
        _, _, i, j = heapq.heappop(heap)
        l = pairs.pop((i, j), None)
        if l is None:
            continue
        if budget.max_degree is not None and sum(l) > budget.max_degree:
            raise GBBudgetExceeded(f"pair degree above {budget.max_degree}",
                                   partial())
        processed += 1
        if budget.max_pairs is not None and processed > budget.max_pairs:
            raise GBBudgetExceeded(f"more than {budget.max_pairs} S-pairs",
                                   partial())
        s = _spoly(elements[i], elements[j], p)
        if not s:
            continue
        r = _reduce(s, reducers(), dkey, p)
        if r and add(r):
            return [(one, [])]

    basis = reducers()
    basis.sort(key=lambda e: key(e[0]), reverse=True)
    out = []
    for idx, (lm, tail) in enumerate(basis):
        others = basis[:idx] + basis[idx + 1:]
        t = _reduce(dict(tail), others, dkey, p) if tail else {}
        t_sorted = sorted(t.items(), key=lambda x: key(x[0]), reverse=True)
        out.append((lm, t_sorted))
    return out


# ------------------------------------------------------------- public types

class GroebnerBasis:
    """A reduced Gröbner basis; elements are monic and sorted by leading monomial."""

    def __init__(self, ring: PolynomialRing, order: MonomialOrder, raw: list):
        self.ring = ring
        self.order = order
        self._raw = raw
        self.leading_monomials = tuple(lm for lm, _ in raw)

    @property
    def elements(self) -> list[Polynomial]:
        return [Polynomial(self.ring, _as_dict(e), _trusted=True) for e in self._raw]

    def __len__(self):
        return len(self._raw)

    def __iter__(self):
        return iter(self.elements)

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return (self.order == other.order and self.ring.nvars == other.ring.nvars
                and [(lm, tuple(t)) for lm, t in self._raw]
                == [(lm, tuple(t)) for lm, t in other._raw])

    def __repr__(self):
        return f"GroebnerBasis([{', '.join(map(str, self.elements))}])"

    def is_unit(self) -> bool:
        return len(self._raw) == 1 and not any(self._raw[0][0])

    def reduce(self, f: Polynomial) -> Polynomial:
        f = self.ring.convert(f) if f.ring.variables != self.ring.variables else f
        r = _reduce(f._terms, self._raw, self.order.desc_key, self.ring.p)
        return Polynomial(self.ring, r, _trusted=True)

    def contains(self, f: Polynomial) -> bool:
        return self.reduce(f).is_zero()

    def is_reduced(self) -> bool:
        lms = self.leading_monomials
        for i, (lm, tail) in enumerate(self._raw):
            for j, other in enumerate(lms):
                if i != j and mono_divides(other, lm):
                    return False
                if any(mono_divides(other, m) for m, _ in tail):
                    return False
        return True

    def s_pairs_reduce_to_zero(self) -> bool:
        p = self.ring.p
        dkey = self.order.desc_key
        for a, b in itertools.combinations(self._raw, 2):
            s = _spoly(a, b, p)
            if s and _reduce(s, self._raw, dkey, p):
                return False
        return True


def _gb_from_dicts(ring, order, dicts, budget=None) -> GroebnerBasis:
    budget = budget or _default_budget
    dicts = [d for d in dicts if d]
    if not dicts:
        return GroebnerBasis(ring, order, [])
    raw = _buchberger_raw(dicts, order, ring.p, ring.nvars, budget)
    return GroebnerBasis(ring, order, raw)


def buchberger(gens, order: MonomialOrder | None = None,
               budget: GBBudget | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of an :class:`Ideal` or a list of polynomials."""
    if isinstance(gens, Ideal):
        return gens.groebner_basis(order, budget)
    gens = list(gens)
    if not gens:
        raise PolynomialError("need at least one polynomial (or pass an Ideal)")
    ring = gens[0].ring
    return Ideal(ring, gens).groebner_basis(order, budget)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.reduce(f)


class Ideal:
    """Ideal of a polynomial ring given by generators (zeros dropped)."""

    def __init__(self, ring: PolynomialRing, gens: Iterable = ()):
        self.ring = ring
        seen = set()
        clean = []
        for g in gens:
            if isinstance(g, str):
                g = ring.parse(g)
            elif isinstance(g, int):
                g = ring.constant(g)
            elif g.ring != ring:
                g = ring.convert(g)
            if g.is_zero() or g in seen:
                continue
            seen.add(g)
            clean.append(g)
        self.gens = tuple(clean)
        self._gb: dict = {}
        # the same ideal with permuted variables, when a basis there is cheaper
        self._twin: Ideal | None = None

    def __repr__(self):
        return f"Ideal({', '.join(map(str, self.gens)) or '0'})"

    def __iter__(self):
        return iter(self.gens)

    def __len__(self):
        return len(self.gens)

    def is_zero(self) -> bool:
        return not self.gens

    def groebner_basis(self, order: MonomialOrder | None = None,
                       budget: GBBudget | None = None) -> GroebnerBasis:
        order = order or self.ring.order
        gb = self._gb.get(order)
        if gb is None:
            gb = _gb_from_dicts(self.ring, order, [g._terms for g in self.gens], budget)
            self._gb[order] = gb
        return gb

    def working_basis(self) -> GroebnerBasis:
        """A Gröbner basis for order-independent questions (membership, length)."""
        if self.ring.order not in self._gb and self._twin is not None:
            return self._twin.groebner_basis()
        return self.groebner_basis()

    def is_unit(self) -> bool:
        return self.working_basis().is_unit()

    def contains(self, f: Polynomial) -> bool:
        return membership(f, self)

    __contains__ = contains

    def issubset(self, other: "Ideal") -> bool:
        gb = other.working_basis()
        return all(gb.contains(gb.ring.convert(g)) for g in self.gens)

    def __le__(self, other):
        return self.issubset(other)

    def __eq__(self, other):
        if not isinstance(other, Ideal):
            return NotImplemented
        return self.groebner_basis() == other.groebner_basis(self.ring.order)

    __hash__ = None

    def __add__(self, other):
        return ideal_sum(self, other)

    def __mul__(self, other):
        return ideal_product(self, other)

    def __pow__(self, n):
        return ideal_power(self, n)

    def frobenius(self, q: int) -> "Ideal":
        return frobenius_power(self, q)

    def colon(self, other) -> "Ideal":
        return colon(self, other)

    def intersect(self, other) -> "Ideal":
        return intersection(self, other)


def _same_ring(I: Ideal, J: Ideal):
    if I.ring.nvars != J.ring.nvars or I.ring.p != J.ring.p:
        raise PolynomialError("ideals live in different rings")


def _as_ideal(ring, J) -> Ideal:
    if isinstance(J, Ideal):
        return J
    if isinstance(J, (Polynomial, str, int)):
        return Ideal(ring, [J])
    return Ideal(ring, J)


def ideal_sum(I: Ideal, J) -> Ideal:
    J = _as_ideal(I.ring, J)
    _same_ring(I, J)
    return Ideal(I.ring, I.gens + J.gens)


def ideal_product(I: Ideal, J) -> Ideal:
    J = _as_ideal(I.ring, J)
    _same_ring(I, J)
    return Ideal(I.ring, [f * g for f in I.gens for g in J.gens])


def ideal_power(I: Ideal, n: int) -> Ideal:
    if n < 0:
        raise PolynomialError("ideal power must be non-negative")
    gens = [I.ring.one()]
    for _ in range(n):
        gens = list(dict.fromkeys(f * g for f in gens for g in I.gens))
    return Ideal(I.ring, gens)


def frobenius_power(I: Ideal, q: int) -> Ideal:
    """``I^[q]``: generated by the ``q``-th powers of the generators of ``I``."""
    if not is_power_of(q, I.ring.p):
        raise PolynomialError("Frobenius power requires q = p^e")
    if q > MAX_FROBENIUS_Q:
        raise OverflowError("Frobenius power q exceeds 2^20")
    if q == 1:
        return I
    return Ideal(I.ring, [g.frobenius(q) for g in I.gens])


def membership(f: Polynomial, I: Ideal) -> bool:
    gb = I.working_basis()
    return gb.contains(gb.ring.convert(f))


def _fresh_name(names, stem="t"):
    name = f"_{stem}"
    k = 0
    while name in names:
        k += 1
        name = f"_{stem}{k}"
    return name


def intersection(I: Ideal, J, budget: GBBudget | None = None) -> Ideal:
    """``I ∩ J`` by eliminating ``t`` from ``t*I + (1 - t)*J``."""
    J = _as_ideal(I.ring, J)
    _same_ring(I, J)
    ring = I.ring
    if I.is_zero() or J.is_zero():
        return Ideal(ring, [])
    order = ring.order
    big = PolynomialRing(ring.field, (_fresh_name(ring.variables),) + ring.variables,
                         BlockOrder(1, Grevlex(), order))
    p = ring.p
    gens = []
    # use Gröbner bases of the inputs: smaller elimination problems
    for g in I.groebner_basis().elements:
        gens.append({(1,) + m: c for m, c in g._terms.items()})
    for g in J.groebner_basis().elements:
        d = {(0,) + m: c for m, c in g._terms.items()}
        for m, c in g._terms.items():
            d[(1,) + m] = (-c) % p
        gens.append(d)
    gb = _gb_from_dicts(big, big.order, gens, budget)
    raw = [(lm[1:], [(m[1:], c) for m, c in tail])
           for lm, tail in gb._raw if lm[0] == 0]
    result = Ideal(ring, [Polynomial(ring, _as_dict(e), _trusted=True) for e in raw])
    # the t-free part of an elimination basis is already the reduced basis
    result._gb[order] = GroebnerBasis(ring, order, raw)
    return result


def divide_exact(f: Polynomial, g: Polynomial) -> Polynomial:
    """``f / g``; raises if ``g`` does not divide ``f``."""
    ring = f.ring
    if g.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    order = ring.order
    p = ring.p
    lmg, lcg = g.leading_term(order)
    inv = pow(lcg, -1, p)
    rem = dict(f._terms)
    quo: dict = {}
    key = order.key
    while rem:
        m = max(rem, key=key)
        if not mono_divides(lmg, m):
            raise PolynomialError("inexact polynomial division")
        c = rem[m] * inv % p
        s = mono_div(m, lmg)
        quo[s] = c
        for gm, gc in g._terms.items():
            t = tuple(x + y for x, y in zip(gm, s))
            v = (rem.get(t, 0) - c * gc) % p
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return Polynomial(ring, quo, _trusted=True)


def colon_principal(I: Ideal, g: Polynomial, budget: GBBudget | None = None) -> Ideal:
    """``I : (g)`` as ``(I ∩ (g)) / g``."""
    ring = I.ring
    if g.is_zero():
        raise PolynomialError("colon by the zero ideal")
    if g.is_constant():
        return I
    if I.is_zero():
        return Ideal(ring, [])
    fast = _colon_variable_power(I, g, budget)
    if fast is not None:
        return fast
    inter = intersection(I, Ideal(ring, [g]), budget)
    return Ideal(ring, [divide_exact(h, g) for h in inter.gens])


def _colon_variable_power(I: Ideal, g: Polynomial, budget: GBBudget | None) -> Ideal | None:
    """Homogeneous ``I : x^k`` in the standard grading.

    With ``x`` last in grevlex, dividing each basis element by as much of
    ``x^k`` as it is divisible by gives a basis of the colon.
    """
    ring = I.ring
    if len(g.terms) != 1 or any(w != 1 for w in ring.weights):
        return None
    (mono, _), = g.terms.items()
    support = [j for j, e in enumerate(mono) if e]
    if len(support) != 1 or not all(h.is_homogeneous() for h in I.gens):
        return None
    i, k = support[0], mono[support[0]]
    names = ring.variables[:i] + ring.variables[i + 1:] + (ring.variables[i],)
    moved = PolynomialRing(ring.field, names, GREVLEX)
    gb = buchberger(Ideal(moved, [moved.convert(h) for h in I.gens]), GREVLEX, budget)
    out = []
    for h in gb.elements:
        s = min(min(m[-1] for m in h.terms), k)
        out.append(moved.from_terms({m[:-1] + (m[-1] - s,): c for m, c in h.terms.items()}))
    result = Ideal(ring, [ring.convert(h) for h in out])
    result._twin = Ideal(moved, out)
    return result


def colon(I: Ideal, J, budget: GBBudget | None = None) -> Ideal:
    """``I : J = {f : f J ⊆ I}``."""
    J = _as_ideal(I.ring, J)
    _same_ring(I, J)
    if J.is_zero():
        raise PolynomialError("colon by the zero ideal")
    if len(J.gens) == 1:
        return colon_principal(I, J.gens[0], budget)
    if I.is_unit():
        return Ideal(I.ring, [I.ring.one()])
    result = None
    for g in J.groebner_basis().elements:
        Q = colon_principal(I, g, budget)
        result = Q if result is None else intersection(result, Q, budget)
    return result


class QuotientRing:
    """``k[x]/I``; every ideal handed out already contains ``I``."""

    def __init__(self, ring: PolynomialRing, defining: Iterable = (), presentation=None):
        self.ring = ring
        self.defining = defining if isinstance(defining, Ideal) else Ideal(ring, defining)
        self.presentation = presentation

    def __repr__(self):
        rel = ", ".join(map(str, self.defining.gens)) or "0"
        return f"QuotientRing({self.ring.p}, {list(self.ring.variables)}, ({rel}))"

    @property
    def p(self) -> int:
        return self.ring.p

    @property
    def gb(self) -> GroebnerBasis:
        return self.defining.groebner_basis()

    def ideal(self, gens: Iterable = ()) -> Ideal:
        """Preimage in the ambient ring of the ideal generated by ``gens``."""
        if isinstance(gens, Ideal):
            gens = gens.gens
        J = Ideal(self.ring, gens)
        return Ideal(self.ring, self.defining.gens + J.gens)

    def maximal_ideal(self) -> Ideal:
        """The homogeneous maximal ideal (all variables), without relations."""
        return Ideal(self.ring, self.ring.gens())

    def is_zero(self, f: Polynomial) -> bool:
        return self.gb.contains(f)
