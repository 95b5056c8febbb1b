"""Compare the numba and numpy elimination backends.

    python benchmarks/bench_kernels.py [--sizes 100,200,400] [--repeat 3]

Kernel timings run in this process with both implementations. The end-to-end
row times a Hodge table in two subprocesses, one with OCIJAC_NO_NUMBA=1.
"""

import argparse
import os
import subprocess
import sys
import time

import numpy as np

from ocijac import _kernels
from ocijac.linalg import DEFAULT_PRIME

END_TO_END = (
    "import time; from ocijac import instances; from ocijac.hodge import hodge_table;"
    "from ocijac.quotient import clear_cache;"
    "hodge_table(instances.k3(instances.FP)); clear_cache();"
    "t = time.perf_counter(); hodge_table(instances.quintic());"
    "print(time.perf_counter() - t)"
)


def best_of(fn, M, repeat):
    times = []
    for _ in range(repeat):
        A = M.copy()
        t = time.perf_counter()
        fn(A, DEFAULT_PRIME)
        times.append(time.perf_counter() - t)
    return min(times)


def end_to_end(no_numba):
    env = dict(os.environ, OCIJAC_NO_NUMBA="1" if no_numba else "0")
    out = subprocess.run([sys.executable, "-c", END_TO_END], env=env, capture_output=True, text=True, check=True)
    return float(out.stdout.strip())


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="100,200,400")
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--skip-end-to-end", action="store_true")
    args = ap.parse_args()

    rng = np.random.default_rng(0)
    print(f"backend in use: {_kernels.backend()}")
    print(f"{'size':>6} {'numpy s':>10} {'numba s':>10} {'speedup':>8}")
    for n in map(int, args.sizes.split(",")):
        M = rng.integers(0, DEFAULT_PRIME, size=(n, n + n // 2), dtype=np.int64)
        t_np = best_of(_kernels.rref_mod_p_numpy, M, args.repeat)
        if _kernels.HAS_NUMBA:
            _kernels.rref_mod_p(M[:4].copy(), DEFAULT_PRIME)  # compile outside the timing
            t_nb = best_of(_kernels.rref_mod_p, M, args.repeat)
            print(f"{n:>6} {t_np:>10.4f} {t_nb:>10.4f} {t_np / t_nb:>7.1f}x")
        else:
            print(f"{n:>6} {t_np:>10.4f} {'-':>10} {'-':>8}")
    if not args.skip_end_to_end:
        a, b = end_to_end(True), end_to_end(False)
        print(f"quintic hodge table: numpy {a:.2f} s, numba {b:.2f} s")


if __name__ == "__main__":
    main()
