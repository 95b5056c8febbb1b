"""The bigraded algebra A = P[mu_1..mu_r, lambda_1..lambda_s] and the
Jacobian ideal J generated by

    Theta_k = sum_i dF_i/dX_k mu_i + sum_j dG_j/dX_k lambda_j,
    F_i,
    G_j lambda_j.

A term of A is stored as one flat exponent tuple ``(a_1..a_r, b_1..b_s,
x_0..x_n)``. The piece A_q(l) is spanned by terms with ``sum(a)+sum(b) = q``
and monomial degree ``a.d + b.e + l``; pieces with ``q < 0`` are zero.
"""

from __future__ import annotations

import hashlib
from dataclasses import dataclass, field as dc_field
from functools import cached_property, lru_cache
from math import comb
from typing import NamedTuple

import numpy as np

from .linalg import ExactMatrix, FieldSpec
from .poly import Polynomial, format_polynomial, monomials_of_degree, partial_derivative


class ConfigurationError(ValueError):
    pass


class GradedIndex(NamedTuple):
    q: int
    ell: int


class BigradedTerm(NamedTuple):
    a: tuple
    b: tuple
    monomial: tuple

    @property
    def q(self) -> int:
        return sum(self.a) + sum(self.b)

    def key(self) -> tuple:
        return self.a + self.b + self.monomial


_K3_TYPES = {(3, (4,)), (4, (2, 3)), (5, (2, 2, 2))}


@dataclass(frozen=True)
class Configuration:
    """Ambient dimension ``n``, equations ``F`` of X and ``G`` of the
    divisors, all in X0..Xn over ``field``. Degrees are read off the
    polynomials."""

    n: int
    F: tuple
    G: tuple = ()
    field: FieldSpec = dc_field(default_factory=FieldSpec.rationals)

    def __post_init__(self):
        object.__setattr__(self, "F", tuple(self.F))
        object.__setattr__(self, "G", tuple(self.G))
        if self.n < 2:
            raise ConfigurationError(f"n must be at least 2, got {self.n}")
        if not self.F and not self.G:
            raise ConfigurationError("need r + s >= 1 polynomials")
        for name, polys in (("F", self.F), ("G", self.G)):
            for i, p in enumerate(polys):
                if p.nvars != self.n + 1:
                    raise ConfigurationError(f"{name}[{i}] is in {p.nvars} variables, expected {self.n + 1}")
                if p.field != self.field:
                    raise ConfigurationError(f"{name}[{i}] is over {p.field}, expected {self.field}")
                deg = p.homogeneous_degree
                if deg is None:
                    if p.is_zero():
                        raise ConfigurationError(f"{name}[{i}] is zero")
                    raise ConfigurationError(f"inhomogeneous {name}[{i}]")
                if deg < 1:
                    raise ConfigurationError(f"{name}[{i}] has degree {deg}, need >= 1")

    def __hash__(self) -> int:
        return hash(self.digest)

    @cached_property
    def digest(self) -> str:
        text = "|".join(
            [str(self.n), str(self.field)]
            + ["F:" + format_polynomial(p) for p in self.F]
            + ["G:" + format_polynomial(p) for p in self.G]
        )
        return hashlib.sha256(text.encode()).hexdigest()[:16]

    @property
    def r(self) -> int:
        return len(self.F)

    @property
    def s(self) -> int:
        return len(self.G)

    @property
    def nvars(self) -> int:
        return self.n + 1

    @property
    def m(self) -> int:
        return self.n - self.r

    @property
    def d(self) -> tuple:
        return tuple(p.homogeneous_degree for p in self.F)

    @property
    def e(self) -> tuple:
        return tuple(p.homogeneous_degree for p in self.G)

    @property
    def d_total(self) -> int:
        return sum(self.d)

    @property
    def e_total(self) -> int:
        return sum(self.e)

    @property
    def delta_min(self) -> int:
        return min(self.d + self.e)

    @property
    def d_max(self) -> int:
        return max(self.d, default=0)

    @property
    def e_max(self) -> int:
        return max(self.e, default=0)

    @property
    def is_k3(self) -> bool:
        return self.s == 0 and (self.n, tuple(sorted(self.d))) in _K3_TYPES

    @property
    def weights(self) -> tuple:
        """Polynomial degree carried by each of mu_1..mu_r, lambda_1..lambda_s."""
        return self.d + self.e

    def with_field(self, field: FieldSpec) -> "Configuration":
        def conv(p):
            return Polynomial.from_dict(p.as_dict(), p.nvars, field)

        return Configuration(self.n, tuple(map(conv, self.F)), tuple(map(conv, self.G)), field)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "r": self.r,
            "s": self.s,
            "d": list(self.d),
            "e": list(self.e),
            "field": str(self.field),
        }


def _compositions(q: int, parts: int):
    """Exponent vectors of length ``parts`` summing to ``q``, lexicographically
    descending."""
    if parts == 0:
        if q == 0:
            yield ()
        return
    if parts == 1:
        yield (q,)
        return
    for first in range(q, -1, -1):
        for rest in _compositions(q - first, parts - 1):
            yield (first,) + rest


@lru_cache(maxsize=4096)
def _piece(cfg: Configuration, q: int, ell: int) -> tuple[tuple, dict]:
    keys = []
    if q >= 0:
        w = cfg.weights
        for ab in _compositions(q, cfg.r + cfg.s):
            deg = sum(x * y for x, y in zip(ab, w)) + ell
            for mono in monomials_of_degree(cfg.nvars, deg):
                keys.append(ab + mono)
    keys = tuple(keys)
    return keys, {k: i for i, k in enumerate(keys)}


def basis_keys(cfg: Configuration, idx) -> tuple:
    """Flat exponent tuples of the monomial basis of A_q(l), in basis order."""
    return _piece(cfg, idx[0], idx[1])[0]


def basis_index(cfg: Configuration, idx) -> dict:
    return _piece(cfg, idx[0], idx[1])[1]


def split_key(cfg: Configuration, key: tuple) -> BigradedTerm:
    r, s = cfg.r, cfg.s
    return BigradedTerm(key[:r], key[r : r + s], key[r + s :])


def basis_A(cfg: Configuration, idx) -> list[BigradedTerm]:
    """Monomial basis of A_q(l): lexicographic (descending) on the mu/lambda
    exponents, then descending grevlex on the monomial."""
    return [split_key(cfg, k) for k in basis_keys(cfg, idx)]


def dim_A(cfg: Configuration, idx) -> int:
    q, ell = idx
    if q < 0:
        return 0
    n, w = cfg.n, cfg.weights
    total = 0
    for ab in _compositions(q, cfg.r + cfg.s):
        deg = sum(x * y for x, y in zip(ab, w)) + ell
        if deg >= 0:
            total += comb(n + deg, n)
    return total


@dataclass(frozen=True)
class JacobianGenerators:
    """Generators of J as sparse elements of A (``{flat key: coeff}``)."""

    theta: tuple  # n+1 elements of A_1(-1)
    f_gens: tuple  # r elements of A_0(d_i)
    glambda_gens: tuple  # s elements of A_1(0)

    def with_bidegrees(self, cfg: Configuration) -> list[tuple[str, dict, GradedIndex]]:
        out = [(f"Theta_{k}", g, GradedIndex(1, -1)) for k, g in enumerate(self.theta)]
        out += [(f"F_{i}", g, GradedIndex(0, cfg.d[i])) for i, g in enumerate(self.f_gens)]
        out += [(f"G_{j}*lambda_{j}", g, GradedIndex(1, 0)) for j, g in enumerate(self.glambda_gens)]
        return out


def _unit(length: int, i: int) -> tuple:
    e = [0] * length
    e[i] = 1
    return tuple(e)


def _embed(p: Polynomial, ab: tuple) -> dict:
    return {ab + m: c for m, c in p.terms}


def a_multiply(x: dict, y: dict, field: FieldSpec) -> dict:
    out: dict = {}
    for kx, cx in x.items():
        for ky, cy in y.items():
            k = tuple(u + v for u, v in zip(kx, ky))
            out[k] = out.get(k, 0) + cx * cy
    return {k: v for k, v in ((k, field.element(v)) for k, v in out.items()) if v != 0}


def a_add(x: dict, y: dict, field: FieldSpec, scale=1) -> dict:
    out = dict(x)
    for k, v in y.items():
        out[k] = out.get(k, 0) + scale * v
    return {k: v for k, v in ((k, field.element(v)) for k, v in out.items()) if v != 0}


def piece_of_key(cfg: Configuration, key: tuple) -> GradedIndex:
    r, s = cfg.r, cfg.s
    ab = key[: r + s]
    q = sum(ab)
    ell = sum(key[r + s :]) - sum(x * y for x, y in zip(ab, cfg.weights))
    return GradedIndex(q, ell)


@lru_cache(maxsize=256)
def jacobian_generators(cfg: Configuration) -> JacobianGenerators:
    r, s, f = cfg.r, cfg.s, cfg.field
    L = r + s
    theta = []
    for k in range(cfg.nvars):
        t: dict = {}
        for i, F in enumerate(cfg.F):
            t = a_add(t, _embed(partial_derivative(F, k), _unit(L, i)), f)
        for j, G in enumerate(cfg.G):
            t = a_add(t, _embed(partial_derivative(G, k), _unit(L, r + j)), f)
        theta.append(t)
    f_gens = tuple(_embed(F, (0,) * L) for F in cfg.F)
    gl = tuple(_embed(G, _unit(L, r + j)) for j, G in enumerate(cfg.G))
    gens = JacobianGenerators(tuple(theta), f_gens, gl)
    _check_euler(cfg, gens)
    return gens


def _check_euler(cfg: Configuration, gens: JacobianGenerators) -> None:
    f, L = cfg.field, cfg.r + cfg.s
    lhs: dict = {}
    for k, t in enumerate(gens.theta):
        xk = {(0,) * L + _unit(cfg.nvars, k): 1}
        lhs = a_add(lhs, a_multiply(xk, t, f), f)
    rhs: dict = {}
    for i, F in enumerate(cfg.F):
        rhs = a_add(rhs, _embed(F, _unit(L, i)), f, scale=cfg.d[i])
    for j, G in enumerate(cfg.G):
        rhs = a_add(rhs, _embed(G, _unit(L, cfg.r + j)), f, scale=cfg.e[j])
    if lhs != rhs:
        raise AssertionError("Euler identity fails for the Jacobian generators")


def _generator_blocks(cfg: Configuration, idx):
    """(generator, factor piece) pairs whose products span J in piece ``idx``."""
    q, ell = idx
    gens = jacobian_generators(cfg)
    blocks = [(t, (q - 1, ell + 1)) for t in gens.theta]
    blocks += [(g, (q, ell - cfg.d[i])) for i, g in enumerate(gens.f_gens)]
    blocks += [(g, (q - 1, ell)) for g in gens.glambda_gens]
    return blocks


def ideal_row_count(cfg: Configuration, idx) -> int:
    return sum(dim_A(cfg, fac) for _, fac in _generator_blocks(cfg, idx))


def iter_ideal_rows(cfg: Configuration, idx, block_rows: int | None = None):
    """Yield dense blocks (numpy arrays over the field) of the ideal span's
    rows, in the documented row order."""
    f = cfg.field
    index = basis_index(cfg, idx)
    ncols = len(index)
    buf = []

    def flush():
        a = f.zeros((len(buf), ncols))
        for i, row in enumerate(buf):
            for c, v in row.items():
                a[i, c] = v
        buf.clear()
        return a

    for gen, fac in _generator_blocks(cfg, idx):
        gen_items = list(gen.items())
        for fk in basis_keys(cfg, fac):
            row = {}
            for gk, c in gen_items:
                col = index[tuple(u + v for u, v in zip(fk, gk))]
                row[col] = c
            buf.append(row)
            if block_rows is not None and len(buf) >= block_rows:
                yield flush()
    if buf or block_rows is None:
        yield flush()


def ideal_piece_span(cfg: Configuration, idx) -> ExactMatrix:
    """Rows: coordinates (in ``basis_A`` order) of Theta_k * A_{q-1}(l+1),
    then F_i * A_q(l-d_i), then G_j lambda_j * A_{q-1}(l)."""
    f = cfg.field
    index = basis_index(cfg, idx)
    rows = []
    for gen, fac in _generator_blocks(cfg, idx):
        gen_items = list(gen.items())
        for fk in basis_keys(cfg, fac):
            rows.append({index[tuple(u + v for u, v in zip(fk, gk))]: c for gk, c in gen_items})
    return ExactMatrix(len(rows), len(index), f, tuple(rows))


def row_as_product(cfg: Configuration, idx, row: int) -> tuple[str, tuple]:
    """Name of the generator and factor monomial behind row ``row``."""
    names = [n for n, _, _ in jacobian_generators(cfg).with_bidegrees(cfg)]
    for name, (gen, fac) in zip(names, _generator_blocks(cfg, idx)):
        keys = basis_keys(cfg, fac)
        if row < len(keys):
            return name, keys[row]
        row -= len(keys)
    raise IndexError("row out of range")


def vector_of(cfg: Configuration, idx, element: dict) -> np.ndarray:
    """Coordinates of an element of A (all terms in piece ``idx``)."""
    index = basis_index(cfg, idx)
    v = cfg.field.zeros(len(index))
    for k, c in element.items():
        v[index[k]] = cfg.field.element(c)
    return v


def element_of(cfg: Configuration, idx, vec) -> dict:
    keys = basis_keys(cfg, idx)
    return {keys[i]: cfg.field.element(x) for i, x in enumerate(vec) if x != 0}
