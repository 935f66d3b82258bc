"""Sparse multivariate polynomials over F_p.

A :class:`MultiPoly` is an immutable sorted tuple of ``(exponents, coeff)``
terms. Besides ring arithmetic the module offers evaluation, Jacobians,
linear changes of coordinates, root extraction for univariate polynomials and
a small text grammar (``parse`` / ``format_poly``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import (
    ArityMismatch,
    PolySyntaxError,
    ShapeMismatch,
    UnknownVariable,
    ZeroPolynomial,
)
from .exactmath import Matrix
from .randomness import label, stream

Exponent = tuple[int, ...]


@dataclass(frozen=True)
class MultiPoly:
    nvars: int
    p: int
    terms: tuple[tuple[Exponent, int], ...] = ()

    @classmethod
    def from_dict(cls, nvars: int, p: int, coeffs: Mapping[Exponent, int]) -> MultiPoly:
        clean = {}
        for e, c in coeffs.items():
            if len(e) != nvars:
                raise ArityMismatch(f"exponent {e} has length != {nvars}")
            c %= p
            if c:
                clean[tuple(e)] = c
        return cls(nvars, p, tuple(sorted(clean.items(), reverse=True)))

    @classmethod
    def constant(cls, nvars: int, p: int, c: int) -> MultiPoly:
        return cls.from_dict(nvars, p, {(0,) * nvars: c})

    @classmethod
    def variable(cls, nvars: int, p: int, index: int) -> MultiPoly:
        e = [0] * nvars
        e[index] = 1
        return cls.from_dict(nvars, p, {tuple(e): 1})

    def as_dict(self) -> dict[Exponent, int]:
        return dict(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    @cached_property
    def degree(self) -> int:
        return max((sum(e) for e, _ in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e, _ in self.terms}) <= 1

    def group_degrees(self, groups: Sequence[int]) -> set[tuple[int, ...]]:
        """Set of multidegrees of the terms w.r.t. consecutive variable groups."""
        out = set()
        for e, _ in self.terms:
            degs, start = [], 0
            for size in groups:
                degs.append(sum(e[start:start + size]))
                start += size
            out.add(tuple(degs))
        return out

    def _check(self, other: MultiPoly) -> None:
        if other.nvars != self.nvars or other.p != self.p:
            raise ArityMismatch("polynomials live in different rings")

    def __add__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        acc = self.as_dict()
        for e, c in other.terms:
            acc[e] = acc.get(e, 0) + c
        return MultiPoly.from_dict(self.nvars, self.p, acc)

    def __neg__(self) -> MultiPoly:
        return self.scale(-1)

    def __sub__(self, other: MultiPoly) -> MultiPoly:
        return self + (-other)

    def scale(self, c: int) -> MultiPoly:
        return MultiPoly.from_dict(self.nvars, self.p, {e: a * c for e, a in self.terms})

    def __mul__(self, other: MultiPoly) -> MultiPoly:
        self._check(other)
        acc: dict[Exponent, int] = {}
        p = self.p
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = tuple(a + b for a, b in zip(e1, e2))
                acc[e] = (acc.get(e, 0) + c1 * c2) % p
        return MultiPoly.from_dict(self.nvars, p, acc)

    def __pow__(self, k: int) -> MultiPoly:
        result = MultiPoly.constant(self.nvars, self.p, 1)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def derivative(self, index: int) -> MultiPoly:
        acc = {}
        for e, c in self.terms:
            if e[index]:
                d = list(e)
                d[index] -= 1
                acc[tuple(d)] = c * e[index]
        return MultiPoly.from_dict(self.nvars, self.p, acc)

    @cached_property
    def partials(self) -> tuple[MultiPoly, ...]:
        return tuple(self.derivative(j) for j in range(self.nvars))

    def reduce(self, q: int) -> MultiPoly:
        return MultiPoly.from_dict(self.nvars, q, dict(self.terms))


def evaluate(f: MultiPoly, point: Sequence[int]) -> int:
    if len(point) != f.nvars:
        raise ArityMismatch(f"point has {len(point)} coordinates, polynomial has {f.nvars} variables")
    p = f.p
    powers: dict[tuple[int, int], int] = {}
    total = 0
    for e, c in f.terms:
        v = c
        for i, k in enumerate(e):
            if k:
                key = (i, k)
                if key not in powers:
                    powers[key] = pow(point[i], k, p)
                v = v * powers[key] % p
        total += v
    return total % p


def jacobian(F: Sequence[MultiPoly], point: Sequence[int]) -> Matrix:
    """Rows are components of ``F``, columns are variables."""
    if len({f.nvars for f in F}) > 1:
        raise ArityMismatch("components have different variable counts")
    return [[evaluate(df, point) for df in f.partials] for f in F]


def substitute_linear(f: MultiPoly, A: Matrix) -> MultiPoly:
    """Return ``f(A x)``."""
    m = f.nvars
    if len(A) != m or any(len(row) != m for row in A):
        raise ShapeMismatch(f"need a {m}x{m} matrix")
    p = f.p
    forms = [
        MultiPoly.from_dict(m, p, {tuple(int(i == j) for i in range(m)): A[r][j] for j in range(m)})
        for r in range(m)
    ]
    cache: dict[tuple[int, int], MultiPoly] = {}

    def power(r: int, k: int) -> MultiPoly:
        if (r, k) not in cache:
            cache[(r, k)] = forms[r] if k == 1 else power(r, k - 1) * forms[r]
        return cache[(r, k)]

    out = MultiPoly(m, p)
    for e, c in f.terms:
        term = MultiPoly.constant(m, p, c)
        for r, k in enumerate(e):
            if k:
                term = term * power(r, k)
        out = out + term
    return out


# Dense univariate helpers: coefficient lists, lowest degree first.

def _trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _mul(a: list[int], b: list[int], p: int) -> list[int]:
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return _trim([c % p for c in out])


def _divmod(a: list[int], b: list[int], p: int) -> tuple[list[int], list[int]]:
    a = list(a)
    inv = pow(b[-1], -1, p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        c = a[-1] * inv % p
        q[shift] = c
        for i, y in enumerate(b):
            a[shift + i] = (a[shift + i] - c * y) % p
        _trim(a)
    return _trim(q), a


def _gcd(a: list[int], b: list[int], p: int) -> list[int]:
    while b:
        a, b = b, _divmod(a, b, p)[1]
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


def _powmod(base: list[int], k: int, mod: list[int], p: int) -> list[int]:
    result = [1]
    base = _divmod(base, mod, p)[1]
    while k:
        if k & 1:
            result = _divmod(_mul(result, base, p), mod, p)[1]
        base = _divmod(_mul(base, base, p), mod, p)[1]
        k >>= 1
    return result


def _sub(a: list[int], b: list[int], p: int) -> list[int]:
    n = max(len(a), len(b))
    a = a + [0] * (n - len(a))
    b = b + [0] * (n - len(b))
    return _trim([(x - y) % p for x, y in zip(a, b)])


def dense_univariate(f: MultiPoly) -> list[int]:
    if f.nvars != 1:
        raise ArityMismatch("univariate polynomial expected")
    out = [0] * (f.degree + 1)
    for (k,), c in f.terms:
        out[k] = c
    return out


def dense_roots(coeffs: list[int], p: int, seed: int = 0) -> set[int]:
    """Distinct roots in F_p of a dense polynomial (lowest degree first)."""
    f = _trim([c % p for c in coeffs])
    if not f:
        raise ZeroPolynomial("the zero polynomial has every element as a root")
    if len(f) == 1:
        return set()
    if p == 2:
        return {x for x in (0, 1) if sum(c * x**i for i, c in enumerate(f)) % 2 == 0}
    # product of (x - r) over the distinct roots r
    g = _gcd(f, _sub(_powmod([0, 1], p, f, p), [0, 1], p), p)
    roots: set[int] = set()
    rng = stream(seed, label("equal_degree_split"))
    stack = [g]
    while stack:
        h = stack.pop()
        if len(h) <= 1:
            continue
        if len(h) == 2:
            roots.add((-h[0]) * pow(h[1], -1, p) % p)
            continue
        while True:
            a = int(rng.integers(0, p, dtype="int64"))
            s = _sub(_powmod([a, 1], (p - 1) // 2, h, p), [1], p)
            d = _gcd(h, s, p)
            if 1 < len(d) < len(h):
                stack.append(d)
                stack.append(_divmod(h, d, p)[0])
                break
    return roots


def univariate_roots(f: MultiPoly, seed: int = 0) -> set[int]:
    return dense_roots(dense_univariate(f), f.p, seed)


# Text grammar: integers, variable names, + - * ^ and parentheses.

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(.))")


def _tokenize(text: str) -> list[tuple[str, str, int]]:
    tokens = []
    pos = 0
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        start = m.start(m.lastindex)
        if m.group(1):
            tokens.append(("int", m.group(1), start))
        elif m.group(2):
            tokens.append(("name", m.group(2), start))
        elif m.group(3) in "+-*^()":
            tokens.append(("op", m.group(3), start))
        else:
            raise PolySyntaxError(f"unexpected character {m.group(3)!r}", start)
        pos = m.end()
    tokens.append(("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, variables: Sequence[str], p: int):
        self.tokens = _tokenize(text)
        self.i = 0
        self.index = {v: k for k, v in enumerate(variables)}
        self.m = len(variables)
        self.p = p

    def peek(self) -> tuple[str, str, int]:
        return self.tokens[self.i]

    def take(self) -> tuple[str, str, int]:
        tok = self.tokens[self.i]
        self.i += 1
        return tok

    def expect(self, op: str) -> None:
        kind, value, pos = self.take()
        if (kind, value) != ("op", op):
            raise PolySyntaxError(f"expected {op!r}", pos)

    def expr(self) -> MultiPoly:
        acc = self.term()
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            rhs = self.term()
            acc = acc + rhs if op == "+" else acc - rhs
        return acc

    def term(self) -> MultiPoly:
        acc = self.unary()
        while self.peek()[:2] == ("op", "*"):
            self.take()
            acc = acc * self.unary()
        return acc

    def unary(self) -> MultiPoly:
        kind, value, _ = self.peek()
        if kind == "op" and value in "+-":
            self.take()
            inner = self.unary()
            return -inner if value == "-" else inner
        return self.power()

    def power(self) -> MultiPoly:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            kind, value, pos = self.take()
            if kind != "int":
                raise PolySyntaxError("exponent must be a non-negative integer", pos)
            return base ** int(value)
        return base

    def atom(self) -> MultiPoly:
        kind, value, pos = self.take()
        if kind == "int":
            return MultiPoly.constant(self.m, self.p, int(value))
        if kind == "name":
            if value not in self.index:
                raise UnknownVariable(f"unknown variable {value!r} at position {pos}")
            return MultiPoly.variable(self.m, self.p, self.index[value])
        if (kind, value) == ("op", "("):
            inner = self.expr()
            self.expect(")")
            return inner
        raise PolySyntaxError(f"unexpected {value or 'end of input'!r}", pos)


def parse(text: str, variables: Sequence[str], p: int) -> MultiPoly:
    """Parse ``text`` into a polynomial in ``variables`` with coefficients mod ``p``."""
    parser = _Parser(text, variables, p)
    poly = parser.expr()
    kind, value, pos = parser.peek()
    if kind != "end":
        raise PolySyntaxError(f"trailing input {value!r}", pos)
    return poly


def default_variables(count: int) -> list[str]:
    return [f"x{i}" for i in range(count)]


def _signed(c: int, p: int) -> int:
    return c - p if c > p // 2 else c


def format_monomial(e: Exponent, variables: Sequence[str]) -> str:
    parts = [v if k == 1 else f"{v}^{k}" for v, k in zip(variables, e) if k]
    return "*".join(parts) or "1"


def format_poly(f: MultiPoly, variables: Sequence[str] | None = None) -> str:
    """Render ``f``; coefficients above p/2 print as negative integers."""
    if variables is None:
        variables = default_variables(f.nvars)
    if f.is_zero:
        return "0"
    pieces = []
    for e, c in f.terms:
        c = _signed(c, f.p)
        mono = format_monomial(e, variables)
        mag = abs(c)
        if mono == "1":
            body = str(mag)
        elif mag == 1:
            body = mono
        else:
            body = f"{mag}*{mono}"
        sign = "-" if c < 0 else "+"
        pieces.append((sign, body))
    first_sign, first = pieces[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in pieces[1:]:
        out += f" {sign} {body}"
    return out


def monomials(nvars: int, degree: int) -> list[Exponent]:
    """All exponent vectors of total ``degree``, in descending lex order."""
    if nvars == 1:
        return [(degree,)]
    out = []
    for first in range(degree, -1, -1):
        out.extend((first,) + rest for rest in monomials(nvars - 1, degree - first))
    return out


def monomial_value(e: Iterable[int], point: Sequence[int], p: int) -> int:
    v = 1
    for x, k in zip(point, e):
        if k:
            v = v * pow(x, k, p) % p
    return v
