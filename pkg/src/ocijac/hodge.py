"""Log-Hodge numbers of U = X - Z read off the Jacobian ring.

For ``p + q = m = n - r`` and a twist ``l >= 0``,

    h^{p,q}(l)_prim = dim B_q(d + e - n - 1 + l),

and the full group differs from the primitive one only in the middle degree
of a proper variety (``s = 0``, ``l = 0``, ``p = q``), where the hyperplane
class adds one dimension.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb

from .graded import Configuration
from .quotient import dim_B


class PreconditionError(ValueError):
    pass


@dataclass(frozen=True)
class HodgeEntry:
    p: int
    q: int
    ell: int
    prim_dim: int
    full_dim: int


@dataclass(frozen=True)
class HodgeTable:
    m: int
    entries: tuple

    def as_rows(self) -> list[tuple]:
        return [(e.p, e.q, e.prim_dim, e.full_dim) for e in self.entries]


def hodge_degree(cfg: Configuration, ell: int = 0) -> int:
    return cfg.d_total + cfg.e_total - cfg.n - 1 + ell


def _check(cfg: Configuration, p: int, q: int, ell: int) -> None:
    if cfg.n < cfg.r + 1:
        raise PreconditionError(f"need n >= r + 1, got n={cfg.n}, r={cfg.r}")
    if p + q != cfg.m:
        raise PreconditionError(f"p + q must equal m = {cfg.m}, got p={p}, q={q}")
    if not 0 <= q <= cfg.m:
        raise PreconditionError(f"q={q} outside [0, {cfg.m}]")
    if ell < 0:
        raise PreconditionError(f"twist must be non-negative, got {ell}")


def correction(cfg: Configuration, p: int, q: int, ell: int) -> int:
    return 1 if (cfg.s == 0 and ell == 0 and p == q) else 0


def hodge_number(cfg: Configuration, p: int, q: int, ell: int = 0, mode: str = "prim") -> int:
    _check(cfg, p, q, ell)
    if mode not in ("prim", "full"):
        raise ValueError(f"mode must be 'prim' or 'full', got {mode!r}")
    prim = dim_B(cfg, (q, hodge_degree(cfg, ell)))
    return prim + correction(cfg, p, q, ell) if mode == "full" else prim


def hodge_table(cfg: Configuration, ell: int = 0) -> HodgeTable:
    m = cfg.m
    rows = []
    for q in range(m + 1):
        p = m - q
        prim = hodge_number(cfg, p, q, ell, "prim")
        rows.append(HodgeEntry(p, q, ell, prim, prim + correction(cfg, p, q, ell)))
    return HodgeTable(m, tuple(rows))


def trivial_dim(cfg: Configuration, q: int) -> int:
    """Dimension of the span of the dlog-wedge forms in degree ``q``:
    C(s-1, q) for s >= 2, zero otherwise."""
    if q <= 0:
        raise PreconditionError(f"q must be positive, got {q}")
    return trivial_count(cfg.s, q)


def trivial_count(s: int, q: int) -> int:
    return comb(s - 1, q) if s >= 2 else 0


def hodge_symmetric(cfg: Configuration) -> bool:
    """Primitive Hodge symmetry h^{p,q} = h^{q,p} in the untwisted table."""
    t = {(e.p, e.q): e.prim_dim for e in hodge_table(cfg, 0).entries}
    return all(t[(p, q)] == t[(q, p)] for p, q in t)
