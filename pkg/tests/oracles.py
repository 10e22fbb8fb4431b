"""Independent reference computations used by the tests.

Nothing here touches Gröbner bases from the package: lengths come from
ranks of multiplication matrices over F_p, and the reference Buchberger is
the textbook loop without pair criteria.
"""

from __future__ import annotations

import itertools

import numpy as np

from hkmult.gfpoly import Polynomial, PolynomialRing


# ------------------------------------------------------------ linear algebra

def rank_mod_p(rows, p: int) -> int:
    """Rank over F_p of an integer matrix (list of rows or 2-d array)."""
    A = np.array(rows, dtype=np.int64) % p
    if A.size == 0:
        return 0
    A = A.reshape(len(A), -1)
    r = 0
    nrows, ncols = A.shape
    for c in range(ncols):
        piv = np.nonzero(A[r:, c])[0]
        if piv.size == 0:
            continue
        i = r + piv[0]
        if i != r:
            A[[r, i]] = A[[i, r]]
        inv = pow(int(A[r, c]), p - 2, p)
        A[r] = (A[r] * inv) % p
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if others.size:
            A[others] = (A[others] - np.outer(A[others, c], A[r])) % p
        r += 1
        if r == nrows:
            break
    return r


# ------------------------------------------------------ box algebra k[x]/(x^a)

class BoxAlgebra:
    """``k[x_1..x_n] / (x_1^a_1, ..., x_n^a_n)`` with its monomial basis."""

    def __init__(self, ring: PolynomialRing, exps):
        self.ring = ring
        self.p = ring.p
        self.exps = tuple(exps)
        self.basis = list(itertools.product(*[range(a) for a in self.exps]))
        self.index = {m: i for i, m in enumerate(self.basis)}

    def vector(self, f: Polynomial) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        for m, c in f:
            i = self.index.get(m)
            if i is not None:
                v[i] = (v[i] + c) % self.p
        return v

    def span(self, gens) -> list:
        """Rows spanning the image of the ideal generated by ``gens``."""
        rows = []
        for g in gens:
            for m in self.basis:
                rows.append(self.vector(g * self.ring.monomial(m)))
        return rows

    def dim(self, gens) -> int:
        rows = self.span(gens)
        return rank_mod_p(rows, self.p) if rows else 0

    # lengths of quotients of k[x] by ideals containing the box powers
    def colength(self, gens) -> int:
        return len(self.basis) - self.dim(gens)

    def colon_colength(self, gens, g: Polynomial) -> int:
        """``lambda(k[x]/(I : g)) = dim(I + gB) - dim(I)``."""
        return self.dim(list(gens) + [g]) - self.dim(gens)

    def intersection_colength(self, gens_i, gens_j) -> int:
        dim_i, dim_j = self.dim(gens_i), self.dim(gens_j)
        dim_sum = self.dim(list(gens_i) + list(gens_j))
        return len(self.basis) - (dim_i + dim_j - dim_sum)

    def contains(self, gens, f: Polynomial) -> bool:
        rows = self.span(gens)
        base = rank_mod_p(rows, self.p)
        return rank_mod_p(rows + [self.vector(f)], self.p) == base


# ---------------------------------------------------- degreewise Hilbert counts

def monomials_of_degree(n: int, d: int):
    if n == 1:
        yield (d,)
        return
    for i in range(d + 1):
        for rest in monomials_of_degree(n - 1, d - i):
            yield (i,) + rest


def hilbert_function(ring: PolynomialRing, gens, upto: int) -> list[int]:
    """Degreewise ``dim (k[x]/I)_d`` for a homogeneous ``I`` (Macaulay matrices)."""
    n, p = ring.nvars, ring.p
    out = []
    for d in range(upto + 1):
        monos = list(monomials_of_degree(n, d))
        idx = {m: i for i, m in enumerate(monos)}
        rows = []
        for g in gens:
            dg = g.degree()
            if dg > d:
                continue
            for m in monomials_of_degree(n, d - dg):
                h = g * ring.monomial(m)
                row = [0] * len(monos)
                for mm, c in h:
                    row[idx[mm]] = c % p
                rows.append(row)
        out.append(len(monos) - (rank_mod_p(rows, p) if rows else 0))
    return out


# --------------------------------------------------------- textbook Buchberger

def _lead(f: Polynomial):
    key = f.ring.order.key
    m = max(f.terms, key=key)
    return m, f.terms[m]


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def naive_reduce(f: Polynomial, G) -> Polynomial:
    ring = f.ring
    p = ring.p
    r = ring.zero()
    leads = [_lead(g) for g in G]
    while not f.is_zero():
        m, c = _lead(f)
        for g, (gm, gc) in zip(G, leads):
            if _divides(gm, m):
                q = tuple(x - y for x, y in zip(m, gm))
                f = f - g * ring.monomial(q, c * pow(gc, p - 2, p))
                break
        else:
            r = r + ring.monomial(m, c)
            f = f - ring.monomial(m, c)
    return r


def naive_groebner(gens) -> list[Polynomial]:
    """Reduced Gröbner basis by the plain S-pair loop (no criteria)."""
    G = [g for g in gens if not g.is_zero()]
    ring = G[0].ring
    p = ring.p
    pairs = [(i, j) for i in range(len(G)) for j in range(i)]
    while pairs:
        i, j = pairs.pop()
        (mi, ci), (mj, cj) = _lead(G[i]), _lead(G[j])
        l = tuple(max(a, b) for a, b in zip(mi, mj))
        s = (G[i] * ring.monomial(tuple(a - b for a, b in zip(l, mi)), pow(ci, p - 2, p))
             - G[j] * ring.monomial(tuple(a - b for a, b in zip(l, mj)), pow(cj, p - 2, p)))
        h = naive_reduce(s, G)
        if not h.is_zero():
            G.append(h)
            pairs.extend((len(G) - 1, k) for k in range(len(G) - 1))
    # minimalize, make monic, interreduce
    G = [g.monic() for g in G]
    leads = [_lead(g)[0] for g in G]
    minimal = []
    for i, g in enumerate(G):
        redundant = any(_divides(leads[k], leads[i]) and (leads[k] != leads[i] or k < i)
                        for k in range(len(G)) if k != i)
        if not redundant:
            minimal.append(g)
    reduced = []
    for k, g in enumerate(minimal):
        rest = minimal[:k] + minimal[k + 1:]
        m, c = _lead(g)
        tail = naive_reduce(g - ring.monomial(m, c), rest)
        reduced.append(ring.monomial(m, 1) + tail)
    return sorted(reduced, key=lambda f: f.ring.order.key(_lead(f)[0]))
