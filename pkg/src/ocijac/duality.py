"""Trace functional on the socle piece and the multiplication pairings.

The socle piece is B_{n-r}(2(d - n - 1) + e). For a smooth configuration it
is one-dimensional; the trace is taken to be the coefficient of its single
standard monomial (any other choice differs by a nonzero scalar, which no
rank or kernel computation can see).
"""

from __future__ import annotations

import logging
from dataclasses import dataclass


from .graded import Configuration, GradedIndex
from .hodge import PreconditionError, hodge_symmetric, trivial_count
from .linalg import ExactMatrix, echelon_array
from .quotient import basis_B, multiplication_tensor

log = logging.getLogger(__name__)


class SmoothnessError(RuntimeError):
    """The socle piece is not one-dimensional, so the configuration is not
    smooth (or not transversal)."""


@dataclass(frozen=True)
class TracePiece:
    idx: GradedIndex
    dim: int
    functional: tuple  # coefficients on the standard monomials of the piece
    degenerate: bool = False  # r > n: all pairings are the zero map

    @property
    def ok(self) -> bool:
        return self.degenerate or self.dim == 1


@dataclass(frozen=True, eq=False)
class PairingReport:
    p: int
    ell: int
    left_idx: GradedIndex
    right_idx: GradedIndex
    left_dim: int
    right_dim: int
    matrix: ExactMatrix
    rank: int
    applicable_case: str = "none"
    verdict: str | None = None
    boundary: bool = False
    claims: tuple = ()

    @property
    def perfect(self) -> bool:
        return self.rank == self.left_dim == self.right_dim

    @property
    def injective(self) -> bool:
        return self.rank == self.left_dim

    def summary(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "left_piece": list(self.left_idx),
            "right_piece": list(self.right_idx),
            "left_dim": self.left_dim,
            "right_dim": self.right_dim,
            "rank": self.rank,
            "applicable_case": self.applicable_case,
            "verdict": self.verdict,
            "boundary": self.boundary,
            "claims": list(self.claims),
        }


def trace_index(cfg: Configuration) -> GradedIndex:
    return GradedIndex(cfg.n - cfg.r, 2 * (cfg.d_total - cfg.n - 1) + cfg.e_total)


def trace_piece(cfg: Configuration) -> TracePiece:
    idx = trace_index(cfg)
    if cfg.r > cfg.n:
        return TracePiece(idx, 0, (), degenerate=True)
    piece = basis_B(cfg, idx)
    functional = (1,) if piece.dim == 1 else ()
    return TracePiece(idx, piece.dim, functional)


def pairing_pieces(cfg: Configuration, p: int, ell: int) -> tuple[GradedIndex, GradedIndex]:
    n, r = cfg.n, cfg.r
    left = GradedIndex(p, cfg.d_total - n - 1 + ell)
    right = GradedIndex(n - r - p, cfg.d_total + cfg.e_total - n - 1 - ell)
    return left, right


def pairing_matrix(cfg: Configuration, p: int, ell: int) -> PairingReport:
    """Matrix of tau(b_i * b_j) over the standard monomials of the two pieces."""
    left, right = pairing_pieces(cfg, p, ell)
    f = cfg.field
    ldim, rdim = basis_B(cfg, left).dim, basis_B(cfg, right).dim
    tp = trace_piece(cfg)
    if tp.degenerate:
        M = ExactMatrix.zeros(ldim, rdim, f)
        return PairingReport(p, ell, left, right, ldim, rdim, M, 0)
    if tp.dim != 1:
        raise SmoothnessError(f"trace piece B{tuple(tp.idx)} has dimension {tp.dim}, expected 1")
    T = multiplication_tensor(cfg, left, right)
    A = T[:, :, 0] if T.shape[2] else f.zeros((ldim, rdim))
    rank = echelon_array(A, f).rank if A.size else 0
    return PairingReport(p, ell, left, right, ldim, rdim, ExactMatrix.from_array(A, f), rank)


def claims(cfg: Configuration, p: int, ell: int) -> list[str]:
    """Every duality hypothesis that covers ``(p, l)``."""
    n, r, s, emax = cfg.n, cfg.r, cfg.s, cfg.e_max
    out = []
    if cfg.r > cfg.n:
        return out
    if p == n - r and s >= 1 and ell < emax:
        out.append("injectivity_only")
    if s >= 1 and 0 <= ell <= emax and r + s <= n:
        out.append("ii")
    if s >= 1 and p < n - r and ell < emax:
        out.append("i")
    if s == 0 and ell == 0 and (n - r >= 1 or (n - r == 0 and p == 0)):
        out.append("iii")
    return out


def applicable_case(cfg: Configuration, p: int, ell: int) -> tuple[str, bool]:
    """Reported case label (first of ``claims``) and whether ``l = e_max``
    is reached through case (ii)."""
    c = claims(cfg, p, ell)
    return (c[0] if c else "none"), ("ii" in c and ell == cfg.e_max)


def check_duality(cfg: Configuration, p: int, ell: int) -> PairingReport:
    """Pairing matrix plus a verdict on every claim covering ``(p, l)``:
    isomorphism for cases (i)-(iii), injectivity at ``p = n - r``."""
    rep = pairing_matrix(cfg, p, ell)
    cs = claims(cfg, p, ell)
    case, boundary = applicable_case(cfg, p, ell)
    held = [rep.injective if c == "injectivity_only" else rep.perfect for c in cs]
    if not cs:
        verdict = "no_claim"
    elif not all(held):
        verdict = "FAILED"
    else:
        verdict = "injective" if case == "injectivity_only" else "perfect"
    if boundary:
        log.info("boundary instance l = e_max = %d under case (ii)", ell)
    return PairingReport(
        rep.p, rep.ell, rep.left_idx, rep.right_idx, rep.left_dim, rep.right_dim,
        rep.matrix, rep.rank, case, verdict, boundary, tuple(cs),
    )


@dataclass(frozen=True)
class EtaReport:
    kernel_dim: int
    expected: int
    rank: int
    source_dim: int  # dim B_0(d + e - n - 1)
    target_dim: int  # dim B_{n-r}(d - n - 1)

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim

    @property
    def ok(self) -> bool:
        return self.surjective and self.kernel_dim == self.expected

    def summary(self) -> dict:
        return {
            "kernel_dim": self.kernel_dim,
            "expected": self.expected,
            "rank": self.rank,
            "source_dim": self.source_dim,
            "target_dim": self.target_dim,
            "surjective": self.surjective,
        }


def eta_kernel(cfg: Configuration) -> EtaReport:
    """Kernel of the dual of the top pairing h_{n-r}(0), i.e. of
    B_0(d + e - n - 1) -> B_{n-r}(d - n - 1)^*."""
    m = cfg.n - cfg.r
    if m < 1:
        raise PreconditionError(f"need n - r >= 1, got {m}")
    rep = pairing_matrix(cfg, m, 0)
    return EtaReport(
        kernel_dim=rep.right_dim - rep.rank,
        expected=trivial_count(cfg.s, m),
        rank=rep.rank,
        source_dim=rep.right_dim,
        target_dim=rep.left_dim,
    )


@dataclass(frozen=True)
class SmoothnessReport:
    trace_dim: int
    hodge_symmetric: bool | None  # None when not applicable (s >= 1 or n = r)
    above_socle_dim: int = 0  # dim B_{n-r}(socle degree + 1); nonzero for e.g. nodes
    degenerate: bool = False  # r > n, nothing to check

    @property
    def ok(self) -> bool:
        if self.degenerate:
            return True
        return self.trace_dim == 1 and self.hodge_symmetric is not False and self.above_socle_dim == 0

    def summary(self) -> dict:
        return {
            "trace_dim": self.trace_dim,
            "hodge_symmetric": self.hodge_symmetric,
            "above_socle_dim": self.above_socle_dim,
            "ok": self.ok,
        }


def smoothness_diagnostic(cfg: Configuration) -> SmoothnessReport:
    """Necessary conditions for smoothness; passing them is evidence, not
    proof. Besides the socle dimension, the piece one degree above the socle
    must vanish: isolated singularities leave a Tjurina tail there."""
    tp = trace_piece(cfg)
    if tp.degenerate:
        return SmoothnessReport(tp.dim, None, degenerate=True)
    sym = None
    if cfg.s == 0 and cfg.n >= cfg.r + 1:
        sym = hodge_symmetric(cfg)
    above = basis_B(cfg, (tp.idx.q, tp.idx.ell + 1)).dim
    return SmoothnessReport(tp.dim, sym, above)


def pairing_cases(cfg: Configuration, ells=None):
    """All ``(p, l)`` with ``0 <= p <= n - r`` and ``0 <= l <= e_max`` at
    which some duality claim is made."""
    ells = range(cfg.e_max + 1) if ells is None else ells
    for p in range(cfg.n - cfg.r + 1):
        for ell in ells:
            cs = claims(cfg, p, ell)
            if cs:
                yield p, ell, cs
