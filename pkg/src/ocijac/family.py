"""Fiberwise Gauss-Manin kernels and the Noether-Lefschetz codimension bounds.

The tangent directions of a family are given directly as a subspace W of
B_1(0). The derivative of the period map on H^{p,q} becomes multiplication

    B_q(d + e - n - 1)  ->  Hom(W, B_{q+1}(d + e - n - 1)),   x |-> (w x)_w,

and its kernel is what the bounds below control.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

import numpy as np

from .graded import Configuration
from .hodge import PreconditionError, trivial_count
from .koszul import SubspaceSpec, full_subspace
from .linalg import echelon_array
from .quotient import basis_B, multiplication_matrix


@dataclass(frozen=True, eq=False)
class FamilyInput:
    cfg: Configuration
    W: SubspaceSpec | None = None  # None means all of B_1(0)
    c: int | None = None  # codimension of T; defaults to codim W
    c_S: int = 0

    def __post_init__(self):
        if self.c_S < 0:
            raise ValueError("c_S must be non-negative")

    @property
    def subspace(self) -> SubspaceSpec:
        return full_subspace(self.cfg) if self.W is None else self.W

    @property
    def codim(self) -> int:
        return self.subspace.codim if self.c is None else self.c


@dataclass(frozen=True)
class NablaKernelReport:
    p: int
    q: int
    kernel_dim: int
    source_dim: int
    trivial_expected: int
    condition_holds: bool
    case: str  # "1" | "2" | "none"
    verdict: str  # "holds" | "FAILED" | "no_claim"
    ring_level_only: bool = False  # curves: W is not identified with deformations

    def summary(self) -> dict:
        return {
            "p": self.p,
            "q": self.q,
            "kernel_dim": self.kernel_dim,
            "source_dim": self.source_dim,
            "trivial_expected": self.trivial_expected,
            "condition_holds": self.condition_holds,
            "case": self.case,
            "verdict": self.verdict,
            "ring_level_only": self.ring_level_only,
        }


def _stacked_kernel_dim(cfg: Configuration, W: SubspaceSpec, q: int, D: int) -> tuple[int, int]:
    f = cfg.field
    src = basis_B(cfg, (q, D)).dim
    if src == 0 or W.dim == 0:
        return src, src
    blocks = [multiplication_matrix(cfg, w, (q, D)) for w in W.vectors(cfg)]
    stacked = np.hstack(blocks)  # src x (dim W * dim target)
    rank = echelon_array(stacked, f).rank if stacked.size else 0
    return src - rank, src


def nabla_kernel(inp: FamilyInput, p: int, q: int) -> NablaKernelReport:
    cfg = inp.cfg
    m = cfg.m
    if p + q != m:
        raise PreconditionError(f"p + q must equal m = {m}, got p={p}, q={q}")
    if not 0 <= p <= m:
        raise PreconditionError(f"p={p} outside [0, {m}]")
    D = cfg.d_total + cfg.e_total - cfg.n - 1
    kdim, src = _stacked_kernel_dim(cfg, inp.subspace, q, D)
    rhs = cfg.n + 1 + inp.c_S + inp.codim
    dm, d = cfg.delta_min, cfg.d_total
    expected_triv = trivial_count(cfg.s, m) if (p, q) == (m, 0) else 0
    if 1 <= p <= m - 1:
        case, holds = "1", dm * (p - 1) + d >= rhs
        want = 0
    elif (p, q) == (m, 0):
        case, holds = "2", dm * (m - 1) + d >= rhs
        want = expected_triv
    else:
        case, holds, want = "none", False, None
    if case == "none" or not holds:
        verdict = "no_claim"
    else:
        verdict = "holds" if kdim == want else "FAILED"
    return NablaKernelReport(p, q, kdim, src, expected_triv, holds, case, verdict, ring_level_only=(m == 1))


@dataclass(frozen=True)
class NLBound:
    value: int
    vacuous: bool

    def summary(self) -> dict:
        return {"bound": self.value, "vacuous": self.vacuous}


def nl_bound(n: int, r: int, s: int, d, e, c_S: int = 0) -> NLBound:
    """Lower bound delta_min (n - r - 1) + sum(d) - c_S - n on the
    codimension of a Noether-Lefschetz component; not clipped at zero."""
    d, e = list(d), list(e)
    if r < 0 or s < 0 or r + s < 1:
        raise ValueError("need r, s >= 0 and r + s >= 1")
    if len(d) != r or len(e) != s:
        raise ValueError(f"expected {r} degrees d and {s} degrees e, got {len(d)} and {len(e)}")
    if any(x < 1 for x in d + e):
        raise ValueError("degrees must be positive")
    value = min(d + e) * (n - r - 1) + sum(d) - c_S - n
    return NLBound(value, value <= 0)


@dataclass(frozen=True)
class SigmaReport:
    d: int
    codim_in_S: int  # d + 1, the count through the fibration over M
    sigma_codim: int  # d - 2 = codim_in_S - dim M
    dim_M: int = 3

    def summary(self) -> dict:
        return {"d": self.d, "codim": self.codim_in_S, "sigma_codim": self.sigma_codim, "dim_M": self.dim_M}


def sigma_component_codim(d: int) -> SigmaReport:
    """Codimension count for the plane-curve component built from curves
    z0*A + z1^d with a divisor through the tangency point."""
    if d < 2:
        raise ValueError(f"need d >= 2, got {d}")
    value = comb(d + 2, 2) - 1 - comb(d + 1, 2) + 1
    if value != d + 1:
        raise AssertionError(f"codimension count {value} != d + 1")
    return SigmaReport(d, value, value - 3)
