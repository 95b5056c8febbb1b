"""Sparse homogeneous polynomials in X0..Xn.

Monomials are exponent tuples. The fixed term order is graded reverse
lexicographic with X0 > X1 > ... > Xn; lists of monomials and printed
polynomials always run from the largest term down.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable

from .linalg import QQ, FieldSpec

Monomial = tuple  # exponent vector of length nvars


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} at position {position}")
        self.position = position


def grevlex_key(m: Monomial):
    """Sort key putting monomials in descending grevlex order."""
    return (-sum(m), m[::-1])


@lru_cache(maxsize=None)
def monomials_of_degree(nvars: int, d: int) -> tuple[Monomial, ...]:
    """All monomials of degree ``d`` in ``nvars`` variables, descending grevlex."""
    if d < 0 or nvars <= 0:
        return ()
    out = []
    for combo in combinations_with_replacement(range(nvars), d):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        out.append(tuple(e))
    out.sort(key=grevlex_key)
    return tuple(out)


@dataclass(frozen=True)
class Polynomial:
    """Immutable polynomial; ``terms`` is sorted descending and has no zeros."""

    terms: tuple  # ((monomial, coeff), ...)
    nvars: int
    field: FieldSpec = QQ

    @classmethod
    def from_dict(cls, d: dict, nvars: int, field: FieldSpec = QQ) -> "Polynomial":
        items = []
        for m, c in d.items():
            if len(m) != nvars:
                raise ValueError(f"monomial {m} has {len(m)} exponents, expected {nvars}")
            c = field.element(c)
            if c != 0:
                items.append((tuple(int(e) for e in m), c))
        items.sort(key=lambda t: grevlex_key(t[0]))
        return cls(tuple(items), nvars, field)

    @classmethod
    def zero(cls, nvars: int, field: FieldSpec = QQ) -> "Polynomial":
        return cls((), nvars, field)

    @classmethod
    def one(cls, nvars: int, field: FieldSpec = QQ) -> "Polynomial":
        return cls((((0,) * nvars, 1),), nvars, field)

    @classmethod
    def variable(cls, k: int, nvars: int, field: FieldSpec = QQ) -> "Polynomial":
        e = [0] * nvars
        e[k] = 1
        return cls(((tuple(e), 1),), nvars, field)

    def as_dict(self) -> dict:
        return dict(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    @property
    def homogeneous_degree(self) -> int | None:
        """Common degree of all terms, or ``None`` if the polynomial is
        inhomogeneous or zero."""
        degs = {sum(m) for m, _ in self.terms}
        return degs.pop() if len(degs) == 1 else None

    def is_homogeneous(self) -> bool:
        return self.homogeneous_degree is not None

    def _check(self, other: "Polynomial"):
        if self.field != other.field or self.nvars != other.nvars:
            raise ValueError("polynomials over different fields or variable counts")

    def __add__(self, other: "Polynomial") -> "Polynomial":
        self._check(other)
        d = self.as_dict()
        for m, c in other.terms:
            d[m] = d.get(m, 0) + c
        return Polynomial.from_dict(d, self.nvars, self.field)

    def __neg__(self) -> "Polynomial":
        return Polynomial.from_dict({m: -c for m, c in self.terms}, self.nvars, self.field)

    def __sub__(self, other: "Polynomial") -> "Polynomial":
        return self + (-other)

    def scale(self, c) -> "Polynomial":
        return Polynomial.from_dict({m: c * v for m, v in self.terms}, self.nvars, self.field)

    def __mul__(self, other: "Polynomial") -> "Polynomial":
        return multiply(self, other)

    def __str__(self) -> str:
        return format_polynomial(self)


def multiply(a: Polynomial, b: Polynomial) -> Polynomial:
    a._check(b)
    d: dict = {}
    for ma, ca in a.terms:
        for mb, cb in b.terms:
            m = tuple(x + y for x, y in zip(ma, mb))
            d[m] = d.get(m, 0) + ca * cb
    return Polynomial.from_dict(d, a.nvars, a.field)


def partial_derivative(p: Polynomial, k: int) -> Polynomial:
    if not 0 <= k < p.nvars:
        raise IndexError(f"variable index {k} out of range for {p.nvars} variables")
    d = {}
    for m, c in p.terms:
        if m[k]:
            e = list(m)
            e[k] -= 1
            d[tuple(e)] = c * m[k]
    return Polynomial.from_dict(d, p.nvars, p.field)


def _format_coeff(c) -> str:
    return str(c)


def format_polynomial(p: Polynomial) -> str:
    """Render in the input grammar; terms descending in grevlex."""
    if not p.terms:
        return "0"
    pieces = []
    for i, (m, c) in enumerate(p.terms):
        neg = False
        if p.field.is_rational and c < 0:
            neg, c = True, -c
        factors = [f"X{k}" if e == 1 else f"X{k}^{e}" for k, e in enumerate(m) if e]
        if not factors:
            body = _format_coeff(c)
        elif c == 1:
            body = "*".join(factors)
        else:
            body = "*".join([_format_coeff(c)] + factors)
        if i == 0:
            pieces.append(("-" if neg else "") + body)
        else:
            pieces.append((" - " if neg else " + ") + body)
    return "".join(pieces)


_TOKEN = re.compile(r"\s*(?:(\d+(?:[./]\d*)?)|(X)|(\^)|(\*)|(\+)|(-)|(\S))")


def _tokenize(text: str):
    pos = 0
    out = []
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if m is None:  # only trailing whitespace left
            break
        start = m.start(m.lastindex)
        num, x, caret, star, plus, minus, other = m.groups()
        if num is not None:
            if not num.isdigit():
                raise PolynomialSyntaxError(f"coefficient {num!r} is not an integer", start)
            out.append(("num", num, start))
        elif x:
            out.append(("X", x, start))
        elif caret:
            out.append(("^", caret, start))
        elif star:
            out.append(("*", star, start))
        elif plus:
            out.append(("+", plus, start))
        elif minus:
            out.append(("-", minus, start))
        else:
            raise PolynomialSyntaxError(f"unexpected character {other!r}", start)
        pos = m.end()
    out.append(("end", "", len(text)))
    return out


class _Parser:
    def __init__(self, text: str, nvars: int):
        self.toks = _tokenize(text)
        self.i = 0
        self.nvars = nvars

    def peek(self):
        return self.toks[self.i]

    def take(self, kind: str):
        tok = self.toks[self.i]
        if tok[0] != kind:
            what = "end of input" if tok[0] == "end" else repr(tok[1])
            raise PolynomialSyntaxError(f"expected {kind!r}, found {what}", tok[2])
        self.i += 1
        return tok

    def poly(self) -> dict:
        d: dict = {}
        sign = 1
        if self.peek()[0] == "-":
            self.take("-")
            sign = -1
        self.term(d, sign)
        while self.peek()[0] in ("+", "-"):
            sign = 1 if self.take(self.peek()[0])[0] == "+" else -1
            self.term(d, sign)
        self.take("end")
        return d

    def term(self, d: dict, sign: int):
        coeff = 1
        exps = [0] * self.nvars
        if self.peek()[0] == "num":
            coeff = int(self.take("num")[1])
            if self.peek()[0] != "*":
                self._add(d, exps, sign * coeff)
                return
            self.take("*")
        self.factor(exps)
        while self.peek()[0] == "*":
            self.take("*")
            self.factor(exps)
        self._add(d, exps, sign * coeff)

    def factor(self, exps: list):
        self.take("X")
        tok = self.take("num")
        k = int(tok[1])
        if k >= self.nvars:
            raise PolynomialSyntaxError(
                f"variable X{k} out of range for {self.nvars} variables", tok[2]
            )
        e = 1
        if self.peek()[0] == "^":
            self.take("^")
            e = int(self.take("num")[1])
        exps[k] += e

    @staticmethod
    def _add(d: dict, exps: list, c: int):
        m = tuple(exps)
        d[m] = d.get(m, 0) + c


def parse_polynomial(text: str, nvars: int, field: FieldSpec = QQ) -> Polynomial:
    """Parse ``text`` into a polynomial in X0..X{nvars-1}.

    >>> str(parse_polynomial("X1^2 - X2*X0 + 2*X1^2", 3))
    '3*X1^2 - X0*X2'
    """
    d = _Parser(text, nvars).poly()
    return Polynomial.from_dict(d, nvars, field)


def euler_sum(p: Polynomial) -> Polynomial:
    """``sum_k X_k * dp/dX_k``."""
    acc = Polynomial.zero(p.nvars, p.field)
    for k in range(p.nvars):
        acc = acc + Polynomial.variable(k, p.nvars, p.field) * partial_derivative(p, k)
    return acc


def random_homogeneous(
    rng, nvars: int, d: int, field: FieldSpec = QQ, coeff_range: int = 20, density: float = 1.0
) -> Polynomial:
    """Random homogeneous polynomial with integer coefficients in
    ``[-coeff_range, coeff_range]``; ``rng`` is a ``random.Random``."""
    d_ = {}
    for m in monomials_of_degree(nvars, d):
        if density >= 1.0 or rng.random() < density:
            d_[m] = rng.randint(-coeff_range, coeff_range)
    poly = Polynomial.from_dict(d_, nvars, field)
    if poly.is_zero() and d >= 0:
        m = monomials_of_degree(nvars, d)[0]
        poly = Polynomial.from_dict({m: 1}, nvars, field)
    return poly


def sum_of_polys(polys: Iterable[Polynomial], nvars: int, field: FieldSpec = QQ) -> Polynomial:
    acc = Polynomial.zero(nvars, field)
    for p in polys:
        acc = acc + p
    return acc
