"""Exact linear algebra over the rationals and prime fields.

Matrices over F_p with ``p < 2**31`` are eliminated densely by the kernels in
:mod:`ocijac._kernels`. Rational matrices (and larger primes) go through a
sparse row-by-row elimination in pure Python; over Q the rows are kept as
primitive integer vectors (fraction-free) and only converted to fractions
when the reduced form is produced.

Every routine returns the reduced row-echelon form, which is unique for a
given row space, so results do not depend on row order or on the backend.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import reduce as _fold
from math import gcd
from typing import Iterable, Sequence

import numpy as np

from . import _kernels

DEFAULT_PRIME = 1048583
SECOND_PRIME = 2097169


class DimensionMismatch(ValueError):
    pass


def _is_prime(p: int) -> bool:
    from sympy import isprime  # deterministic below 2**64

    return bool(isprime(p))


@dataclass(frozen=True)
class FieldSpec:
    kind: str = "rationals"
    prime: int | None = None

    def __post_init__(self):
        if self.kind == "rationals":
            if self.prime is not None:
                raise ValueError("the rationals carry no prime")
        elif self.kind == "prime_field":
            p = self.prime
            if not isinstance(p, int) or p < 2 or p >= 2**62:
                raise ValueError(f"prime must be an integer in [2, 2^62), got {p!r}")
            if not _is_prime(p):
                raise ValueError(f"{p} is not prime")
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rationals(cls) -> "FieldSpec":
        return cls("rationals")

    @classmethod
    def prime_field(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("prime_field", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse ``"q"`` or ``"fp:<prime>"``."""
        t = text.strip()
        if t.lower() in ("q", "qq", "rationals"):
            return cls.rationals()
        if t.lower().startswith("fp:"):
            digits = t[3:].strip()
            if not digits.isdigit():
                raise ValueError(f"bad prime in field {text!r}")
            p = int(digits)
            if p < 2 or not _is_prime(p):
                raise ValueError(f"field {text!r}: {p} is not prime")
            return cls.prime_field(p)
        raise ValueError(f"unknown field {text!r} (expected 'q' or 'fp:<prime>')")

    def __str__(self) -> str:
        return "q" if self.kind == "rationals" else f"fp:{self.prime}"

    @property
    def is_rational(self) -> bool:
        return self.kind == "rationals"

    @property
    def dense_kernel(self) -> bool:
        """True when the int64 elimination kernels apply."""
        return self.kind == "prime_field" and self.prime < _kernels.MAX_KERNEL_PRIME

    @property
    def dtype(self):
        return np.int64 if self.dense_kernel else object

    def element(self, x) -> int | Fraction:
        if self.is_rational:
            x = Fraction(x)
            return int(x) if x.denominator == 1 else x
        p = self.prime
        if isinstance(x, Fraction):
            if x.denominator % p == 0:
                raise ZeroDivisionError(f"denominator of {x} vanishes mod {p}")
            return x.numerator * pow(x.denominator, -1, p) % p
        return int(x) % p

    def inv(self, x):
        if self.is_rational:
            return self.element(1 / Fraction(x))
        return pow(int(x), -1, self.prime)

    def zeros(self, shape) -> np.ndarray:
        if self.dense_kernel:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(0)
        return out

    def array(self, data) -> np.ndarray:
        """Field-normalized numpy array from nested sequences."""
        if self.dense_kernel:
            a = np.asarray(data, dtype=object)
            if a.dtype == object and a.size:
                a = np.vectorize(self.element, otypes=[object])(a)
            return np.asarray(a, dtype=np.int64).reshape(np.shape(data)) % self.prime
        a = np.asarray(data, dtype=object)
        if a.size:
            a = np.vectorize(self.element, otypes=[object])(a)
        return a

    def normalize(self, a: np.ndarray) -> np.ndarray:
        if self.is_rational:
            return a
        return a % self.prime

    def matmul(self, A: np.ndarray, B: np.ndarray) -> np.ndarray:
        if A.shape[1] == 0:
            return self.zeros((A.shape[0], B.shape[1]))
        if self.dense_kernel:
            return _kernels.matmul_mod_p(A, B, self.prime)
        out = A.dot(B)
        return out % self.prime if not self.is_rational else out


QQ = FieldSpec.rationals()


@dataclass(frozen=True, eq=False)
class ExactMatrix:
    """Sparse matrix: one ``{col: value}`` dict per row, zeros never stored."""

    nrows: int
    ncols: int
    field: FieldSpec
    rows: tuple = dc_field(repr=False)

    def __post_init__(self):
        if len(self.rows) != self.nrows:
            raise DimensionMismatch("row count does not match nrows")
        for row in self.rows:
            for c, v in row.items():
                if not 0 <= c < self.ncols:
                    raise IndexError(f"column {c} out of range")
                if v == 0:
                    raise ValueError("stored zero entry")

    @classmethod
    def from_rows(cls, rows: Iterable, ncols: int, field: FieldSpec) -> "ExactMatrix":
        """Build from dense lists or from ``{col: value}`` dicts."""
        out = []
        for row in rows:
            items = row.items() if isinstance(row, dict) else enumerate(row)
            d = {}
            for c, v in items:
                v = field.element(v)
                if v != 0:
                    d[int(c)] = v
            if not isinstance(row, dict) and len(row) != ncols:
                raise DimensionMismatch(f"row of length {len(row)}, expected {ncols}")
            out.append(d)
        return cls(len(out), ncols, field, tuple(out))

    @classmethod
    def from_array(cls, a: np.ndarray, field: FieldSpec) -> "ExactMatrix":
        a = np.asarray(a)
        nr, nc = a.shape
        rows = []
        for i in range(nr):
            nz = np.flatnonzero(a[i] != 0)
            rows.append({int(c): field.element(a[i, c]) for c in nz})
        rows = [{c: v for c, v in r.items() if v != 0} for r in rows]
        return cls(nr, nc, field, tuple(rows))

    @classmethod
    def zeros(cls, nrows: int, ncols: int, field: FieldSpec) -> "ExactMatrix":
        return cls(nrows, ncols, field, tuple({} for _ in range(nrows)))

    @classmethod
    def identity(cls, n: int, field: FieldSpec) -> "ExactMatrix":
        return cls(n, n, field, tuple({i: 1} for i in range(n)))

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    @property
    def entries(self) -> dict:
        return {(i, c): v for i, row in enumerate(self.rows) for c, v in row.items()}

    @property
    def nnz(self) -> int:
        return sum(len(r) for r in self.rows)

    def to_array(self) -> np.ndarray:
        a = self.field.zeros((self.nrows, self.ncols))
        for i, row in enumerate(self.rows):
            for c, v in row.items():
                a[i, c] = v
        return a

    def transpose(self) -> "ExactMatrix":
        cols = [dict() for _ in range(self.ncols)]
        for i, row in enumerate(self.rows):
            for c, v in row.items():
                cols[c][i] = v
        return ExactMatrix(self.ncols, self.nrows, self.field, tuple(cols))

    def apply(self, vec: Sequence) -> list:
        """Matrix-vector product ``m @ vec``."""
        if len(vec) != self.ncols:
            raise DimensionMismatch(f"vector of length {len(vec)}, expected {self.ncols}")
        f = self.field
        return [f.element(sum(v * vec[c] for c, v in row.items())) for row in self.rows]

    def matmul(self, other: "ExactMatrix") -> "ExactMatrix":
        if self.ncols != other.nrows or self.field != other.field:
            raise DimensionMismatch("incompatible matrices")
        f = self.field
        out = []
        for row in self.rows:
            acc: dict = {}
            for k, a in row.items():
                for j, b in other.rows[k].items():
                    acc[j] = acc.get(j, 0) + a * b
            out.append({j: f.element(v) for j, v in acc.items() if f.element(v) != 0})
        return ExactMatrix(self.nrows, other.ncols, f, tuple(out))

    def is_zero(self) -> bool:
        return all(not r for r in self.rows)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        return (self.shape, self.field, self.rows) == (other.shape, other.field, other.rows)


@dataclass(frozen=True, eq=False)
class EchelonResult:
    """Reduced row-echelon form: pivot entries are 1, pivot columns are clean."""

    pivot_columns: tuple[int, ...]
    rank: int
    reduced_rows: np.ndarray
    ncols: int
    field: FieldSpec

    @property
    def free_columns(self) -> tuple[int, ...]:
        piv = set(self.pivot_columns)
        return tuple(c for c in range(self.ncols) if c not in piv)

    def normal_form_matrix(self) -> np.ndarray:
        """Matrix ``N`` (ncols x #free) with ``v @ N`` = coordinates of the
        residue of ``v`` on the free columns."""
        free = list(self.free_columns)
        N = self.field.zeros((self.ncols, len(free)))
        for j, c in enumerate(free):
            N[c, j] = 1
        if self.rank and free:
            R = self.reduced_rows[:, free]
            N[list(self.pivot_columns), :] = self.field.normalize(-R)
        return N

    def residues(self, vectors: np.ndarray) -> np.ndarray:
        """Full-length residues of the rows of ``vectors`` modulo the row space."""
        f = self.field
        V = np.asarray(vectors, dtype=f.dtype)
        if self.rank == 0:
            return V.copy()
        coeff = V[:, list(self.pivot_columns)]
        return f.normalize(V - f.matmul(coeff, self.reduced_rows))


def _integer_row(row: dict) -> dict:
    den = 1
    for v in row.values():
        if isinstance(v, Fraction):
            den = den * v.denominator // gcd(den, v.denominator)
    out = {c: int(v * den) for c, v in row.items()}
    g = _fold(gcd, out.values(), 0)
    if g > 1:
        out = {c: v // g for c, v in out.items()}
    return out


def _primitive(row: dict) -> dict:
    g = _fold(gcd, row.values(), 0)
    if g > 1:
        row = {c: v // g for c, v in row.items()}
    return row


def _combine(a: int, va: dict, b: int, vb: dict) -> dict:
    """``a*va - b*vb`` with zeros dropped."""
    out = {c: a * v for c, v in va.items()}
    for c, v in vb.items():
        w = out.get(c, 0) - b * v
        if w:
            out[c] = w
        else:
            out.pop(c, None)
    return out


def _rref_rational(rows: Iterable[dict], ncols: int) -> tuple[list[int], list[dict]]:
    basis: dict[int, dict] = {}
    for row in rows:
        v = _integer_row(row)
        while v:
            c = min(v)
            b = basis.get(c)
            if b is None:
                basis[c] = v
                break
            g = gcd(b[c], v[c])
            v = _primitive(_combine(b[c] // g, v, v[c] // g, b))
    pivots = sorted(basis)
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        b = basis[c]
        for c2 in pivots[:idx]:
            r = basis[c2]
            if c in r:
                g = gcd(b[c], r[c])
                basis[c2] = _primitive(_combine(b[c] // g, r, r[c] // g, b))
    out = []
    for c in pivots:
        b = basis[c]
        lead = b[c]
        out.append({k: (Fraction(v, lead) if v % lead else v // lead) for k, v in b.items()})
    return pivots, out


def _rref_modular_sparse(rows: Iterable[dict], ncols: int, p: int) -> tuple[list[int], list[dict]]:
    basis: dict[int, dict] = {}
    for row in rows:
        v = {c: x % p for c, x in row.items() if x % p}
        while v:
            c = min(v)
            b = basis.get(c)
            if b is None:
                inv = pow(v[c], -1, p)
                basis[c] = {k: x * inv % p for k, x in v.items()}
                break
            f = v[c]
            for k, x in b.items():
                w = (v.get(k, 0) - f * x) % p
                if w:
                    v[k] = w
                else:
                    v.pop(k, None)
    pivots = sorted(basis)
    for idx in range(len(pivots) - 1, -1, -1):
        c = pivots[idx]
        b = basis[c]
        for c2 in pivots[:idx]:
            r = basis[c2]
            f = r.get(c)
            if f:
                for k, x in b.items():
                    w = (r.get(k, 0) - f * x) % p
                    if w:
                        r[k] = w
                    else:
                        r.pop(k, None)
    return pivots, [basis[c] for c in pivots]


def echelon_array(a: np.ndarray, field: FieldSpec) -> EchelonResult:
    """Echelon form of a dense array (not modified)."""
    nr, nc = a.shape
    if field.dense_kernel:
        M = np.array(a, dtype=np.int64, copy=True)
        rank, piv = _kernels.rref_mod_p(M, field.prime)
        return EchelonResult(tuple(int(c) for c in piv), rank, M[:rank].copy(), nc, field)
    rows = []
    for i in range(nr):
        nz = np.flatnonzero(a[i] != 0)
        rows.append({int(c): a[i, c] for c in nz})
    return _echelon_sparse(rows, nc, field)


def _echelon_sparse(rows, nc: int, field: FieldSpec) -> EchelonResult:
    if field.is_rational:
        pivots, red = _rref_rational(rows, nc)
    else:
        pivots, red = _rref_modular_sparse(rows, nc, field.prime)
    R = field.zeros((len(pivots), nc))
    for i, r in enumerate(red):
        for c, v in r.items():
            R[i, c] = v
    return EchelonResult(tuple(pivots), len(pivots), R, nc, field)


def echelon(m: ExactMatrix) -> EchelonResult:
    """Reduced row-echelon form with pivots chosen leftmost-column first."""
    if m.field.dense_kernel:
        return echelon_array(m.to_array(), m.field)
    return _echelon_sparse(m.rows, m.ncols, m.field)


def rank(m: ExactMatrix | np.ndarray, field: FieldSpec | None = None) -> int:
    if isinstance(m, ExactMatrix):
        return echelon(m).rank
    return echelon_array(m, field).rank


def kernel_basis(m: ExactMatrix) -> list[list]:
    """Basis of the right null space, one vector per free column."""
    ech = echelon(m)
    f = m.field
    out = []
    for c in ech.free_columns:
        v = [0] * m.ncols
        v[c] = 1
        for i, pc in enumerate(ech.pivot_columns):
            x = ech.reduced_rows[i, c]
            if x != 0:
                v[pc] = f.element(-x)
        out.append(v)
    return out


def reduce_against(span: Sequence[Sequence], target: Sequence, field: FieldSpec = QQ):
    """Reduce ``target`` modulo the span of ``span``.

    Returns ``(residue, coefficients)``. The residue is supported on the
    non-pivot coordinates of the span's echelon form; ``coefficients`` is a
    list ``c`` with ``sum(c[i] * span[i]) == target`` when the residue is
    zero, else ``None``.
    """
    n = len(target)
    for v in span:
        if len(v) != n:
            raise DimensionMismatch(f"span vector of length {len(v)}, target of length {n}")
    t = [field.element(x) for x in target]
    if not span:
        return t, (None if any(t) else [])
    S = ExactMatrix.from_rows(span, n, field)
    ech = echelon(S)
    res = ech.residues(field.array([t]))[0]
    residue = [field.element(x) for x in res]
    if any(residue):
        return residue, None
    # solve span^T c = target through the echelon form of [span^T | target]
    k = len(span)
    aug = [[S.rows[j].get(i, 0) for j in range(k)] + [t[i]] for i in range(n)]
    ech2 = echelon(ExactMatrix.from_rows(aug, k + 1, field))
    coeffs = [0] * k
    for i, pc in enumerate(ech2.pivot_columns):
        coeffs[pc] = field.element(ech2.reduced_rows[i, k])
    return residue, coeffs
