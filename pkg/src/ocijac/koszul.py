"""Koszul complexes of a subspace V of B_1(0) acting on the Jacobian ring:

    B_p(l) (x) wedge^{q+1} V  ->  B_{p+1}(l) (x) wedge^q V  ->  B_{p+2}(l) (x) wedge^{q-1} V

with differential

    b (x) v_0 ^ ... ^ v_q  |->  sum_i (-1)^i (v_i b) (x) v_0 ^ ..^v_i^.. ^ v_q.

Coordinates on ``B (x) wedge^k V`` are ordered basis-major: the pair
(standard monomial j, wedge tuple w) sits at ``j * C(dim V, k) + index(w)``,
with wedge tuples in increasing lexicographic order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from itertools import combinations
from math import comb
from pathlib import Path

import numpy as np

from .graded import Configuration, GradedIndex
from .hodge import PreconditionError
from .linalg import ExactMatrix, FieldSpec, echelon_array
from .quotient import BElement, basis_B, multiplication_matrix

log = logging.getLogger(__name__)

B1 = GradedIndex(1, 0)


@dataclass(frozen=True, eq=False)
class SubspaceSpec:
    source: str  # "full" | "explicit" | "random"
    basis: np.ndarray  # (dim V) x (dim B_1(0)), rows independent
    b1dim: int
    seed: int | None = None

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def codim(self) -> int:
        return self.b1dim - self.dim

    def vectors(self, cfg: Configuration) -> list[BElement]:
        return [BElement(B1, self.basis[i]) for i in range(self.dim)]


def full_subspace(cfg: Configuration) -> SubspaceSpec:
    n = basis_B(cfg, B1).dim
    basis = cfg.field.zeros((n, n))
    for i in range(n):
        basis[i, i] = 1
    return SubspaceSpec("full", basis, n)


def explicit_subspace(cfg: Configuration, vectors) -> SubspaceSpec:
    f = cfg.field
    n = basis_B(cfg, B1).dim
    rows = [list(v) for v in vectors]
    for v in rows:
        if len(v) != n:
            raise ValueError(f"vector of length {len(v)}, dim B_1(0) = {n}")
    basis = f.array(rows) if rows else f.zeros((0, n))
    basis = basis.reshape(len(rows), n)
    if rows and echelon_array(basis, f).rank != len(rows):
        raise ValueError("subspace vectors are linearly dependent")
    return SubspaceSpec("explicit", basis, n)


def _random_entries(rng: np.random.Generator, shape, field: FieldSpec) -> np.ndarray:
    if field.is_rational:
        return field.array(rng.integers(-50, 51, size=shape).tolist())
    hi = min(field.prime, 2**62)
    return field.array(rng.integers(0, hi, size=shape).tolist())


def random_subspace(cfg: Configuration, c: int, seed: int) -> SubspaceSpec:
    """Random subspace of codimension ``c``, deterministic in ``seed``."""
    n = basis_B(cfg, B1).dim
    if not 0 <= c <= n:
        raise ValueError(f"codimension {c} outside [0, {n}]")
    f = cfg.field
    if c == 0:
        full = full_subspace(cfg)
        return SubspaceSpec("random", full.basis, n, seed)
    rng = np.random.default_rng(seed)
    k = n - c
    for _ in range(100):
        basis = _random_entries(rng, (k, n), f).reshape(k, n)
        if k == 0 or echelon_array(basis, f).rank == k:
            return SubspaceSpec("random", basis, n, seed)
    raise RuntimeError("could not draw independent vectors")  # pragma: no cover


def change_basis(V: SubspaceSpec, cfg: Configuration, seed: int) -> SubspaceSpec:
    """Same subspace, basis transformed by a random invertible matrix."""
    f = cfg.field
    rng = np.random.default_rng(seed)
    k = V.dim
    while True:
        g = _random_entries(rng, (k, k), f).reshape(k, k)
        if k == 0 or echelon_array(g, f).rank == k:
            break
    return SubspaceSpec(V.source, f.matmul(g, V.basis), V.b1dim, V.seed)


def read_subspace(path, cfg: Configuration) -> SubspaceSpec:
    """Read the ``# b1dim=<N>`` file format: one integer vector per line."""
    lines = Path(path).read_text(encoding="utf-8").splitlines()
    n = basis_B(cfg, B1).dim
    header = None
    vectors = []
    for lineno, line in enumerate(lines, 1):
        t = line.strip()
        if not t:
            continue
        if t.startswith("#"):
            body = t[1:].strip()
            if body.startswith("b1dim="):
                header = int(body.split("=", 1)[1])
            continue
        try:
            vectors.append([int(x) for x in t.split()])
        except ValueError:
            raise ValueError(f"{path}:{lineno}: coordinates must be integers") from None
    if header is None:
        raise ValueError(f"{path}: missing '# b1dim=<N>' header")
    if header != n:
        raise ValueError(f"{path}: b1dim={header} but dim B_1(0) = {n}")
    return explicit_subspace(cfg, vectors)


def write_subspace(path, V: SubspaceSpec) -> None:
    lines = [f"# b1dim={V.b1dim}"]
    for row in V.basis:
        lines.append(" ".join(str(int(x)) if not hasattr(x, "denominator") or x.denominator == 1 else str(x) for x in row))
    Path(path).write_text("\n".join(lines) + "\n", encoding="utf-8")


def wedge_basis(k: int, size: int) -> list[tuple]:
    if size < 0:
        return []
    return list(combinations(range(k), size))


def _differential_array(cfg: Configuration, V: SubspaceSpec, p: int, ell: int, q: int) -> np.ndarray:
    """Dense matrix (target coords x source coords) of
    B_p(l) (x) wedge^{q+1} V -> B_{p+1}(l) (x) wedge^q V."""
    f = cfg.field
    k = V.dim
    src_w = wedge_basis(k, q + 1)
    tgt_w = wedge_basis(k, q)
    sdim = basis_B(cfg, (p, ell)).dim
    tdim = basis_B(cfg, (p + 1, ell)).dim
    D = f.zeros((tdim * len(tgt_w), sdim * len(src_w)))
    if D.size == 0:
        return D
    mults = [multiplication_matrix(cfg, v, (p, ell)) for v in V.vectors(cfg)]  # sdim x tdim
    tpos = {w: i for i, w in enumerate(tgt_w)}
    ns, nt = len(src_w), len(tgt_w)
    for si, w in enumerate(src_w):
        for t, vi in enumerate(w):
            ti = tpos[w[:t] + w[t + 1 :]]
            block = mults[vi].T if t % 2 == 0 else f.normalize(-mults[vi].T)
            D[ti::nt, si::ns] = f.normalize(D[ti::nt, si::ns] + block)
    return D


def koszul_differential(cfg: Configuration, V: SubspaceSpec, p: int, ell: int, q: int) -> ExactMatrix:
    return ExactMatrix.from_array(_differential_array(cfg, V, p, ell, q), cfg.field)


@dataclass(frozen=True)
class KoszulReport:
    p: int
    ell: int
    q: int
    codim: int
    dims: tuple  # (source, middle, target)
    rank_in: int
    rank_out: int
    middle_homology: int
    condition_case: str
    verdict: str  # "exact" | "FAILED" | "no_claim"
    dd_zero: bool
    boundary: bool = False

    def summary(self) -> dict:
        return {
            "p": self.p,
            "ell": self.ell,
            "q": self.q,
            "codim": self.codim,
            "dims": list(self.dims),
            "rank_in": self.rank_in,
            "rank_out": self.rank_out,
            "middle_homology": self.middle_homology,
            "condition_case": self.condition_case,
            "verdict": self.verdict,
            "dd_zero": self.dd_zero,
            "boundary": self.boundary,
        }


def exactness_case(cfg: Configuration, p: int, ell: int, q: int, c: int) -> tuple[str, bool]:
    """First condition (i)-(iii) that guarantees exactness, or ``"none"``.
    Second value flags the boundary ``l = d - n - 1`` of condition (iii)."""
    dm, d, n, r, s = cfg.delta_min, cfg.d_total, cfg.n, cfg.r, cfg.s
    if p < 0:
        return "none", False
    if q == 0 and dm * p + ell >= c:
        return "i", False
    if q == 1 and dm * p + ell >= 1 + c and dm * (p + 1) + ell >= cfg.d_max + c:
        return "ii", False
    if (
        dm * (r + p) + ell >= d + q + c
        and d + cfg.e_max - n - 1 > ell >= d - n - 1
        and (r + s <= n + 2 or p <= n - r - q // 2)
    ):
        return "iii", ell == d - n - 1
    return "none", False


def check_exactness(cfg: Configuration, V: SubspaceSpec, p: int, ell: int, q: int) -> KoszulReport:
    if cfg.s < 1:
        raise PreconditionError("exactness criteria need s >= 1")
    f = cfg.field
    k = V.dim
    d_in = _differential_array(cfg, V, p, ell, q)
    d_out = _differential_array(cfg, V, p + 1, ell, q - 1)
    mid = basis_B(cfg, (p + 1, ell)).dim * comb(k, q) if q >= 0 else 0
    src = basis_B(cfg, (p, ell)).dim * comb(k, q + 1) if q + 1 >= 0 else 0
    tgt = basis_B(cfg, (p + 2, ell)).dim * comb(k, q - 1) if q - 1 >= 0 else 0
    rank_in = echelon_array(d_in, f).rank if d_in.size else 0
    rank_out = echelon_array(d_out, f).rank if d_out.size else 0
    if d_in.size and d_out.size:
        dd_zero = not np.any(f.matmul(d_out, d_in) != 0)
    else:
        dd_zero = True
    homology = mid - rank_in - rank_out
    case, boundary = exactness_case(cfg, p, ell, q, V.codim)
    if boundary:
        log.info("boundary instance l = d - n - 1 = %d under condition (iii)", ell)
    if case == "none":
        verdict = "no_claim"
    else:
        verdict = "exact" if homology == 0 else "FAILED"
    return KoszulReport(p, ell, q, V.codim, (src, mid, tgt), rank_in, rank_out, homology, case, verdict, dd_zero, boundary)
