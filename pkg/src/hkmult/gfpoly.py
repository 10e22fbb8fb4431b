"""Multivariate polynomials over a prime field.

Monomials are plain tuples of non-negative exponents, one entry per ring
variable.  Polynomials are immutable maps from monomial to nonzero
coefficient in ``[0, p)``.
"""

from __future__ import annotations

import re
from typing import Iterable, Iterator, Mapping, Sequence

Monomial = tuple  # tuple[int, ...]

MAX_EXPONENT = 2**32
MAX_FROBENIUS_Q = 2**20
MAX_CHARACTERISTIC = 65521


class PolynomialError(ValueError):
    pass


class PolynomialSyntaxError(PolynomialError):
    """Raised by the parser; ``column`` is 1-based."""

    def __init__(self, message: str, column: int | None = None):
        self.column = column
        if column is not None:
            message = f"{message} (column {column})"
        super().__init__(message)


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


class PrimeField:
    """The field with ``p`` elements, elements represented by ints in ``[0, p)``."""

    __slots__ = ("p",)

    def __init__(self, p: int):
        if not isinstance(p, int) or not is_prime(p):
            raise PolynomialError("characteristic must be prime")
        if p > MAX_CHARACTERISTIC:
            raise PolynomialError(f"characteristic must be at most {MAX_CHARACTERISTIC}")
        self.p = p

    def __repr__(self):
        return f"PrimeField({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __call__(self, value: int) -> int:
        return value % self.p

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def sub(self, a: int, b: int) -> int:
        return (a - b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return a * b % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("division by zero in F_p")
        return pow(a, -1, self.p)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.p


# ---------------------------------------------------------------- monomials

def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """Quotient ``a / b``; assumes ``b`` divides ``a``."""
    return tuple(x - y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x > y:
            return False
    return True


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x if x > y else y for x, y in zip(a, b))


def mono_coprime(a: Monomial, b: Monomial) -> bool:
    for x, y in zip(a, b):
        if x and y:
            return False
    return True


def mono_degree(m: Monomial, weights: Sequence[int] | None = None) -> int:
    if weights is None:
        return sum(m)
    return sum(e * w for e, w in zip(m, weights))


def _check_exponents(m: Monomial) -> Monomial:
    for e in m:
        if e >= MAX_EXPONENT:
            raise OverflowError("monomial exponent exceeds 2^32")
    return m


# ----------------------------------------------------------- monomial orders

class MonomialOrder:
    """Base class.  ``key(m)`` increases with the order; ``desc_key(m)``
    increases as the order decreases (for min-heaps)."""

    kind = "abstract"

    def key(self, m: Monomial):
        raise NotImplementedError

    def desc_key(self, m: Monomial):
        raise NotImplementedError

    def compare(self, a: Monomial, b: Monomial) -> int:
        ka, kb = self.key(a), self.key(b)
        return (ka > kb) - (ka < kb)

    def __eq__(self, other):
        return type(self) is type(other) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def _ident(self):
        return (self.kind,)

    def __repr__(self):
        return f"{type(self).__name__}()"


class Grevlex(MonomialOrder):
    """Degree first, ties broken by the smaller exponent of the last variable."""

    kind = "grevlex"

    def key(self, m):
        return (sum(m), tuple(-e for e in reversed(m)))

    def desc_key(self, m):
        return (-sum(m),) + tuple(reversed(m))


class Lex(MonomialOrder):
    kind = "lex"

    def key(self, m):
        return m

    def desc_key(self, m):
        return tuple(-e for e in m)


class BlockOrder(MonomialOrder):
    """Elimination order: the first ``split`` variables dominate."""

    kind = "block"

    def __init__(self, split: int, first: MonomialOrder | None = None,
                 second: MonomialOrder | None = None):
        self.split = split
        self.first = first or Grevlex()
        self.second = second or Grevlex()

    def key(self, m):
        k = self.split
        return (self.first.key(m[:k]), self.second.key(m[k:]))

    def desc_key(self, m):
        k = self.split
        return self.first.desc_key(m[:k]) + self.second.desc_key(m[k:])

    def _ident(self):
        return (self.kind, self.split, self.first._ident(), self.second._ident())

    def __repr__(self):
        return f"BlockOrder({self.split}, {self.first!r}, {self.second!r})"


GREVLEX = Grevlex()
LEX = Lex()


def make_order(name: str) -> MonomialOrder:
    if name == "grevlex":
        return Grevlex()
    if name == "lex":
        return Lex()
    raise PolynomialError(f"unknown monomial order {name!r}")


# ------------------------------------------------------------------- rings

_IDENT = re.compile(r"[A-Za-z_][A-Za-z_0-9]*\Z")


class PolynomialRing:
    """``F_p[x_1, ..., x_n]`` with a fixed variable order and monomial order."""

    def __init__(self, p: int | PrimeField, variables: Sequence[str],
                 order: MonomialOrder | None = None,
                 weights: Sequence[int] | None = None):
        self.field = p if isinstance(p, PrimeField) else PrimeField(p)
        self.variables = tuple(variables)
        if len(set(self.variables)) != len(self.variables):
            raise PolynomialError("variable names must be unique")
        for v in self.variables:
            if not _IDENT.match(v):
                raise PolynomialError(f"invalid variable name {v!r}")
        self.order = order or GREVLEX
        if weights is None:
            weights = (1,) * len(self.variables)
        self.weights = tuple(int(w) for w in weights)
        if len(self.weights) != len(self.variables) or any(w < 1 for w in self.weights):
            raise PolynomialError("weights must be positive, one per variable")
        self._index = {v: i for i, v in enumerate(self.variables)}

    @property
    def p(self) -> int:
        return self.field.p

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def __repr__(self):
        return f"PolynomialRing({self.p}, {list(self.variables)}, {self.order!r})"

    def __eq__(self, other):
        return (isinstance(other, PolynomialRing) and self.p == other.p
                and self.variables == other.variables and self.order == other.order
                and self.weights == other.weights)

    def __hash__(self):
        return hash((self.p, self.variables, self.order, self.weights))

    def with_order(self, order: MonomialOrder) -> "PolynomialRing":
        return PolynomialRing(self.field, self.variables, order, self.weights)

    def index(self, name: str) -> int:
        return self._index[name]

    # constructors
    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.constant(1)

    def constant(self, c: int) -> "Polynomial":
        return Polynomial(self, {(0,) * self.nvars: c})

    def gen(self, name_or_index) -> "Polynomial":
        i = name_or_index if isinstance(name_or_index, int) else self._index[name_or_index]
        m = [0] * self.nvars
        m[i] = 1
        return Polynomial(self, {tuple(m): 1})

    def gens(self) -> list["Polynomial"]:
        return [self.gen(i) for i in range(self.nvars)]

    def monomial(self, exponents: Sequence[int], coeff: int = 1) -> "Polynomial":
        return Polynomial(self, {tuple(exponents): coeff})

    def from_terms(self, terms: Mapping[Monomial, int]) -> "Polynomial":
        return Polynomial(self, terms)

    def parse(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def __call__(self, text_or_value) -> "Polynomial":
        if isinstance(text_or_value, Polynomial):
            return self.convert(text_or_value)
        if isinstance(text_or_value, int):
            return self.constant(text_or_value)
        return self.parse(text_or_value)

    def convert(self, f: "Polynomial") -> "Polynomial":
        """Map ``f`` into this ring by variable name."""
        if f.ring == self:
            return f
        if f.ring.p != self.p:
            raise PolynomialError("characteristic mismatch")
        try:
            pos = [self._index[v] for v in f.ring.variables]
        except KeyError as exc:
            raise PolynomialError(f"variable {exc.args[0]} not in target ring") from None
        n = self.nvars
        terms = {}
        for m, c in f._terms.items():
            t = [0] * n
            for i, e in zip(pos, m):
                t[i] = e
            terms[tuple(t)] = c
        return Polynomial(self, terms, _trusted=True)


# -------------------------------------------------------------- polynomials

class Polynomial:
    """Immutable polynomial in a :class:`PolynomialRing`."""

    __slots__ = ("ring", "_terms", "_hash")

    def __init__(self, ring: PolynomialRing, terms: Mapping[Monomial, int] = (),
                 _trusted: bool = False):
        self.ring = ring
        if _trusted:
            self._terms = terms
        else:
            p = ring.p
            n = ring.nvars
            clean = {}
            for m, c in dict(terms).items():
                m = tuple(int(e) for e in m)
                if len(m) != n:
                    raise PolynomialError(
                        f"monomial has {len(m)} exponents, ring has {n} variables")
                if any(e < 0 for e in m):
                    raise PolynomialError("negative exponent")
                _check_exponents(m)
                c = (clean.get(m, 0) + c) % p
                if c:
                    clean[m] = c
                else:
                    clean.pop(m, None)
            self._terms = clean
        self._hash = None

    # -- basic access
    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def __iter__(self) -> Iterator[tuple[Monomial, int]]:
        return iter(self._terms.items())

    def __len__(self):
        return len(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self._terms)

    def coefficient(self, m: Monomial) -> int:
        return self._terms.get(tuple(m), 0)

    def degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(m) for m in self._terms)

    def weighted_degree(self) -> int:
        w = self.ring.weights
        return max(mono_degree(m, w) for m in self._terms) if self._terms else -1

    def is_homogeneous(self) -> bool:
        w = self.ring.weights
        return len({mono_degree(m, w) for m in self._terms}) <= 1

    def sorted_terms(self, order: MonomialOrder | None = None) -> list[tuple[Monomial, int]]:
        order = order or self.ring.order
        return sorted(self._terms.items(), key=lambda t: order.key(t[0]), reverse=True)

    def leading_term(self, order: MonomialOrder | None = None) -> tuple[Monomial, int]:
        if not self._terms:
            raise PolynomialError("zero polynomial has no leading term")
        order = order or self.ring.order
        m = max(self._terms, key=order.key)
        return m, self._terms[m]

    def leading_monomial(self, order: MonomialOrder | None = None) -> Monomial:
        return self.leading_term(order)[0]

    def monic(self, order: MonomialOrder | None = None) -> "Polynomial":
        if not self._terms:
            return self
        _, c = self.leading_term(order)
        return self.scale(self.ring.field.inv(c))

    # -- arithmetic
    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if other.ring.nvars != self.ring.nvars:
                raise PolynomialError("polynomials live in rings with different variable counts")
            if other.ring.p != self.ring.p:
                raise PolynomialError("characteristic mismatch")
            return other
        if isinstance(other, int):
            return self.ring.constant(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t = dict(self._terms)
        for m, c in other._terms.items():
            s = (t.get(m, 0) + c) % p
            if s:
                t[m] = s
            else:
                t.pop(m, None)
        return Polynomial(self.ring, t, _trusted=True)

    __radd__ = __add__

    def __neg__(self):
        p = self.ring.p
        return Polynomial(self.ring, {m: p - c for m, c in self._terms.items()}, _trusted=True)

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: int) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {m: v * c % p for m, v in self._terms.items()}, _trusted=True)

    def mul_term(self, m: Monomial, c: int = 1) -> "Polynomial":
        p = self.ring.p
        c %= p
        if not c:
            return self.ring.zero()
        return Polynomial(self.ring, {_check_exponents(mono_mul(k, m)): v * c % p
                                      for k, v in self._terms.items()}, _trusted=True)

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        p = self.ring.p
        t: dict = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = tuple(a + b for a, b in zip(m1, m2))
                t[m] = (t.get(m, 0) + c1 * c2) % p
        t = {m: c for m, c in t.items() if c}
        for m in t:
            _check_exponents(m)
        return Polynomial(self.ring, t, _trusted=True)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Polynomial":
        if not isinstance(n, int) or n < 0:
            raise PolynomialError("exponent must be a non-negative integer")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def frobenius(self, q: int) -> "Polynomial":
        """``f**q`` for ``q`` a power of the characteristic.

        Coefficients are fixed by Frobenius, so this only scales exponents.
        """
        p = self.ring.p
        if not is_power_of(q, p):
            raise PolynomialError("Frobenius power requires q = p^e")
        if q > MAX_FROBENIUS_Q:
            raise OverflowError("Frobenius power q exceeds 2^20")
        return Polynomial(self.ring, {_check_exponents(tuple(e * q for e in m)): c
                                      for m, c in self._terms.items()}, _trusted=True)

    # -- comparison
    def __eq__(self, other):
        if isinstance(other, int):
            other = self.ring.constant(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring.nvars == other.ring.nvars and self._terms == other._terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- printing
    def __str__(self):
        return format_polynomial(self)

    def __repr__(self):
        return f"Polynomial({format_polynomial(self)!r})"


def format_polynomial(f: Polynomial) -> str:
    """Render ``f`` in the text syntax understood by :func:`parse_polynomial`."""
    if f.is_zero():
        return "0"
    p = f.ring.p
    names = f.ring.variables
    out = []
    for m, c in f.sorted_terms():
        neg = c > p // 2 and p > 2
        a = p - c if neg else c
        factors = []
        for name, e in zip(names, m):
            if e == 1:
                factors.append(name)
            elif e > 1:
                factors.append(f"{name}^{e}")
        if a != 1 or not factors:
            factors.insert(0, str(a))
        body = "*".join(factors)
        if not out:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


# ------------------------------------------------------------------- parser

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z_0-9]*)|(\*\*|[-+*^()]))")


def _tokenize(text: str):
    pos = 0
    tokens = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            col = pos + 1
            while col <= n and text[col - 1].isspace():
                col += 1
            raise PolynomialSyntaxError(f"unexpected character {text[col - 1]!r}", col)
        num, ident, op = m.groups()
        start = m.start(m.lastindex) + 1
        if num is not None:
            tokens.append(("num", int(num), start))
        elif ident is not None:
            tokens.append(("id", ident, start))
        else:
            tokens.append(("op", "^" if op == "**" else op, start))
        pos = m.end()
    tokens.append(("end", None, n + 1))
    return tokens


class _Parser:
    # expr := ['-'|'+'] term (('+'|'-') term)* ; term := factor ('*' factor)*
    # factor := atom ('^' integer)? ; atom := integer | identifier | '(' expr ')'

    def __init__(self, text: str, ring: PolynomialRing):
        self.ring = ring
        self.tokens = _tokenize(text)
        self.i = 0

    def peek(self):
        return self.tokens[self.i]

    def take(self):
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            raise PolynomialSyntaxError("empty polynomial", self.peek()[2])
        f = self.expr()
        kind, val, col = self.peek()
        if kind != "end":
            raise PolynomialSyntaxError(f"unexpected token {val!r}", col)
        return f

    def expr(self) -> Polynomial:
        sign = 1
        kind, val, _ = self.peek()
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                g = self.term()
                f = f + g if val == "+" else f - g
            else:
                return f

    def term(self) -> Polynomial:
        f = self.factor()
        while True:
            kind, val, _ = self.peek()
            if kind == "op" and val == "*":
                self.take()
                f = f * self.factor()
            else:
                return f

    def factor(self) -> Polynomial:
        base = self.atom()
        kind, val, _ = self.peek()
        if kind == "op" and val == "^":
            self.take()
            kind, val, col = self.take()
            if kind != "num":
                raise PolynomialSyntaxError("exponent must be a non-negative integer", col)
            base = base ** val
        return base

    def atom(self) -> Polynomial:
        kind, val, col = self.take()
        if kind == "num":
            return self.ring.constant(val)
        if kind == "id":
            if val not in self.ring._index:
                raise PolynomialSyntaxError(f"unknown identifier {val!r}", col)
            return self.ring.gen(val)
        if kind == "op" and val == "(":
            f = self.expr()
            kind2, val2, col2 = self.take()
            if not (kind2 == "op" and val2 == ")"):
                raise PolynomialSyntaxError("expected ')'", col2)
            return f
        if kind == "end":
            raise PolynomialSyntaxError("unexpected end of input", col)
        raise PolynomialSyntaxError(f"unexpected token {val!r}", col)


def parse_polynomial(text: str, ring: PolynomialRing) -> Polynomial:
    """Parse ``text`` such as ``"x^2*y - 3*z^3"`` in ``ring``."""
    return _Parser(text, ring).parse()


def parse_polynomial_list(text: str, ring: PolynomialRing) -> list[Polynomial]:
    """Comma-separated polynomials; column numbers refer to ``text``."""
    out = []
    offset = 0
    for piece in text.split(","):
        try:
            out.append(parse_polynomial(piece, ring))
        except PolynomialSyntaxError as exc:
            col = None if exc.column is None else exc.column + offset
            msg = str(exc).rsplit(" (column", 1)[0]
            raise PolynomialSyntaxError(msg, col) from None
        offset += len(piece) + 1
    return out


def linear_part_rank(polys: Iterable[Polynomial]) -> int:
    """Rank over ``F_p`` of the degree-one parts of ``polys``."""
    rows = []
    for f in polys:
        n = f.ring.nvars
        row = [0] * n
        for m, c in f:
            if sum(m) == 1:
                row[m.index(1)] = c
        rows.append(row)
        p = f.ring.p
    if not rows:
        return 0
    return rank_mod_p(rows, p)


def rank_mod_p(rows: list[list[int]], p: int) -> int:
    rows = [[x % p for x in r] for r in rows]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(rows)) if rows[i][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for i in range(len(rows)):
            if i != rank and rows[i][col]:
                c = rows[i][col]
                rows[i] = [(a - c * b) % p for a, b in zip(rows[i], rows[rank])]
        rank += 1
    return rank
