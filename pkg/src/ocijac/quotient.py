"""Degreewise Jacobian ring B = A/J.

Each piece B_q(l) is computed by echelonizing the ideal rows inside A_q(l).
The surviving (non-pivot) basis monomials are the standard monomials; they
form the basis in which elements of B are written. Pieces are memoized per
configuration.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

import numpy as np

from . import graded
from .graded import (
    Configuration,
    GradedIndex,
    basis_index,
    basis_keys,
    ideal_piece_span,
    iter_ideal_rows,
)
from .linalg import EchelonResult, echelon, echelon_array

# ideal rows are eliminated in blocks of this many rows (or ncols, if larger)
BLOCK_ROWS = 2048


@dataclass(frozen=True, eq=False)
class QuotientPiece:
    cfg: Configuration
    idx: GradedIndex
    ambient: tuple  # flat keys of A_q(l)
    echelon: EchelonResult

    @property
    def ideal_rank(self) -> int:
        return self.echelon.rank

    @cached_property
    def standard_columns(self) -> tuple[int, ...]:
        return self.echelon.free_columns

    @cached_property
    def standard_monomials(self) -> tuple:
        return tuple(self.ambient[c] for c in self.standard_columns)

    @property
    def dim(self) -> int:
        return len(self.ambient) - self.echelon.rank

    @cached_property
    def nf_matrix(self) -> np.ndarray:
        """dim_A x dim_B matrix taking A-coordinates to B-coordinates."""
        return self.echelon.normal_form_matrix()

    def coords_of_keys(self, cols) -> np.ndarray:
        """B-coordinates of the basis monomials of A at ambient columns ``cols``."""
        return self.nf_matrix[np.asarray(cols, dtype=np.int64)]


@dataclass(frozen=True, eq=False)
class BElement:
    idx: GradedIndex
    coords: np.ndarray

    def is_zero(self) -> bool:
        return not np.any(self.coords != 0)

    def __eq__(self, other) -> bool:
        if not isinstance(other, BElement):
            return NotImplemented
        return self.idx == other.idx and np.array_equal(self.coords, other.coords)


def _ideal_echelon(cfg: Configuration, idx: GradedIndex) -> EchelonResult:
    f = cfg.field
    ncols = len(basis_keys(cfg, idx))
    if not f.dense_kernel:
        return echelon(ideal_piece_span(cfg, idx))
    step = max(BLOCK_ROWS, ncols)
    basis = f.zeros((0, ncols))
    ech = None
    for block in iter_ideal_rows(cfg, idx, block_rows=step):
        ech = echelon_array(np.vstack([basis, block]), f)
        basis = ech.reduced_rows
    if ech is None:
        ech = echelon_array(basis, f)
    return ech


@lru_cache(maxsize=2048)
def _basis_B(cfg: Configuration, q: int, ell: int) -> QuotientPiece:
    idx = GradedIndex(q, ell)
    return QuotientPiece(cfg, idx, basis_keys(cfg, idx), _ideal_echelon(cfg, idx))


def basis_B(cfg: Configuration, idx) -> QuotientPiece:
    return _basis_B(cfg, int(idx[0]), int(idx[1]))


def dim_B(cfg: Configuration, idx) -> int:
    return basis_B(cfg, idx).dim


def clear_cache() -> None:
    """Drop memoized pieces, including the ambient bases and generators."""
    _basis_B.cache_clear()
    graded._piece.cache_clear()
    graded.jacobian_generators.cache_clear()


def normal_form(cfg: Configuration, element, idx) -> BElement:
    """Project a vector in ``basis_A(idx)`` coordinates to B_q(l)."""
    piece = basis_B(cfg, idx)
    f = cfg.field
    v = np.asarray([f.element(x) for x in element], dtype=f.dtype)
    if v.shape[0] != len(piece.ambient):
        raise ValueError(f"vector of length {v.shape[0]}, piece has dimension {len(piece.ambient)}")
    coords = f.matmul(v[None, :], piece.nf_matrix)[0] if piece.dim else f.zeros(0)
    return BElement(piece.idx, coords)


def unit(cfg: Configuration) -> BElement:
    piece = basis_B(cfg, (0, 0))
    c = cfg.field.zeros(piece.dim)
    c[0] = 1
    return BElement(piece.idx, c)


def basis_element(cfg: Configuration, idx, i: int) -> BElement:
    piece = basis_B(cfg, idx)
    c = cfg.field.zeros(piece.dim)
    c[i] = 1
    return BElement(piece.idx, c)


def lift(cfg: Configuration, x: BElement) -> np.ndarray:
    """A-coordinates of the standard-monomial representative of ``x``."""
    piece = basis_B(cfg, x.idx)
    v = cfg.field.zeros(len(piece.ambient))
    v[list(piece.standard_columns)] = x.coords
    return v


def product_columns(cfg: Configuration, left, right) -> np.ndarray:
    """Ambient column (in the product piece) of std_i(left) * std_j(right),
    as an array of shape (dim left, dim right)."""
    pl, pr = basis_B(cfg, left), basis_B(cfg, right)
    tgt = GradedIndex(pl.idx.q + pr.idx.q, pl.idx.ell + pr.idx.ell)
    index = basis_index(cfg, tgt)
    out = np.empty((pl.dim, pr.dim), dtype=np.int64)
    for i, u in enumerate(pl.standard_monomials):
        for j, w in enumerate(pr.standard_monomials):
            out[i, j] = index[tuple(a + b for a, b in zip(u, w))]
    return out


def multiplication_tensor(cfg: Configuration, left, right) -> np.ndarray:
    """T[i, j, :] = B-coordinates of std_i(left) * std_j(right)."""
    pl, pr = basis_B(cfg, left), basis_B(cfg, right)
    tgt = basis_B(cfg, (pl.idx.q + pr.idx.q, pl.idx.ell + pr.idx.ell))
    cols = product_columns(cfg, left, right)
    if tgt.dim == 0 or cols.size == 0:
        return cfg.field.zeros((pl.dim, pr.dim, tgt.dim))
    return tgt.nf_matrix[cols]


def multiplication_matrix(cfg: Configuration, w: BElement, src) -> np.ndarray:
    """Matrix (dim src x dim target) of x -> w*x in row-vector convention."""
    f = cfg.field
    T = multiplication_tensor(cfg, w.idx, src)  # (dim w, dim src, dim tgt)
    if T.shape[0] == 0:
        return f.zeros(T.shape[1:])
    out = f.zeros(T.shape[1:])
    for k in np.flatnonzero(w.coords != 0):
        out = f.normalize(out + w.coords[k] * T[k])
    return out


def multiply_B(cfg: Configuration, x: BElement, y: BElement) -> BElement:
    f = cfg.field
    T = multiplication_tensor(cfg, x.idx, y.idx)
    tgt = GradedIndex(x.idx.q + y.idx.q, x.idx.ell + y.idx.ell)
    dim = T.shape[2]
    if dim == 0 or T.shape[0] == 0 or T.shape[1] == 0:
        return BElement(tgt, f.zeros(dim))
    # sum_ij x_i y_j T[i, j, :]
    xy = f.normalize(np.multiply.outer(x.coords, y.coords)).reshape(-1)
    coords = f.matmul(xy[None, :], T.reshape(-1, dim))[0]
    return BElement(tgt, coords)
