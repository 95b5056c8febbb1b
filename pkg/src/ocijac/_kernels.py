"""Hot loops for modular elimination.

Two interchangeable implementations live here: a numba ``@njit`` version and
a pure-numpy version. The numba path is used when numba imports cleanly and
the environment variable ``OCIJAC_NO_NUMBA`` is unset (or ``0``). Both paths
operate in place on ``int64`` arrays holding residues in ``[0, p)`` and need
``p < 2**31`` so that a single product fits in a signed 64-bit word.
"""

from __future__ import annotations

import os

import numpy as np

MAX_KERNEL_PRIME = 2**31

_DISABLED = os.environ.get("OCIJAC_NO_NUMBA", "0") not in ("", "0", "false", "False")

try:
    if _DISABLED:
        raise ImportError("numba disabled by OCIJAC_NO_NUMBA")
    from numba import njit

    HAS_NUMBA = True
except ImportError:  # pragma: no cover - exercised via the env flag in a subprocess
    HAS_NUMBA = False


def _inv_mod_py(a: int, p: int) -> int:
    return pow(int(a), -1, p)


def rref_mod_p_numpy(M: np.ndarray, p: int) -> tuple[int, np.ndarray]:
    """Reduced row-echelon form of ``M`` modulo ``p``, in place.

    Returns ``(rank, pivot_columns)``. The first ``rank`` rows of ``M`` hold
    the reduced rows; the remaining rows are zero.
    """
    nr, nc = M.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r == nr:
            break
        nz = np.flatnonzero(M[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        inv = _inv_mod_py(M[r, c], p)
        if inv != 1:
            M[r, c:] = (M[r, c:] * inv) % p
        hit = np.flatnonzero(M[:, c])
        hit = hit[hit != r]
        if hit.size:
            support = c + np.flatnonzero(M[r, c:])
            f = M[hit, c][:, None]
            block = M[np.ix_(hit, support)]
            M[np.ix_(hit, support)] = (block - f * M[r, support][None, :]) % p
        pivots.append(c)
        r += 1
    return r, np.asarray(pivots, dtype=np.int64)


def matmul_mod_p_numpy(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
    """``A @ B mod p`` without int64 overflow."""
    k = A.shape[1]
    chunk = max(1, (2**63 - 1) // max(1, (p - 1) ** 2))
    if k <= chunk:
        return (A @ B) % p
    out = np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
    for s in range(0, k, chunk):
        out = (out + (A[:, s : s + chunk] @ B[s : s + chunk]) % p) % p
    return out


if HAS_NUMBA:

    @njit(cache=True)
    def _inv_mod_nb(a, p):
        t, new_t = 0, 1
        r, new_r = p, a
        while new_r != 0:
            q = r // new_r
            t, new_t = new_t, t - q * new_t
            r, new_r = new_r, r - q * new_r
        if t < 0:
            t += p
        return t

    @njit(cache=True)
    def _rref_mod_p_nb(M, p):
        nr, nc = M.shape
        pivots = np.empty(min(nr, nc), dtype=np.int64)
        support = np.empty(nc, dtype=np.int64)
        r = 0
        for c in range(nc):
            if r == nr:
                break
            piv = -1
            for i in range(r, nr):
                if M[i, c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(c, nc):
                    tmp = M[r, j]
                    M[r, j] = M[piv, j]
                    M[piv, j] = tmp
            inv = _inv_mod_nb(M[r, c], p)
            ns = 0
            for j in range(c, nc):
                if M[r, j] != 0:
                    if inv != 1:
                        M[r, j] = (M[r, j] * inv) % p
                    support[ns] = j
                    ns += 1
            for i in range(nr):
                if i == r:
                    continue
                f = M[i, c]
                if f == 0:
                    continue
                for t in range(ns):
                    j = support[t]
                    M[i, j] = (M[i, j] - f * M[r, j]) % p
            pivots[r] = c
            r += 1
        return r, pivots[:r].copy()

    @njit(cache=True)
    def _matmul_mod_p_nb(A, B, p):
        n, k = A.shape
        m = B.shape[1]
        out = np.zeros((n, m), dtype=np.int64)
        for i in range(n):
            for t in range(k):
                a = A[i, t]
                if a == 0:
                    continue
                for j in range(m):
                    out[i, j] = (out[i, j] + a * B[t, j]) % p
        return out

    def rref_mod_p(M: np.ndarray, p: int) -> tuple[int, np.ndarray]:
        if M.size == 0:
            return 0, np.zeros(0, dtype=np.int64)
        rank, piv = _rref_mod_p_nb(M, np.int64(p))
        return int(rank), piv

    def matmul_mod_p(A: np.ndarray, B: np.ndarray, p: int) -> np.ndarray:
        if (p - 1) ** 2 * max(1, A.shape[1]) < 2**63:
            return (A @ B) % p
        return _matmul_mod_p_nb(A, B, np.int64(p))

else:
    rref_mod_p = rref_mod_p_numpy
    matmul_mod_p = matmul_mod_p_numpy


def backend() -> str:
    return "numba" if HAS_NUMBA else "numpy"
