#!/usr/bin/env python3
"""Benchmark the group-closure kernel: numba scalar BFS vs vectorized numpy.

Both backends must return the identical element ordering; this script times
them on growing moduli and checks agreement.  Run with --n-list to pick
moduli; the group for q=4, n=101 has 1,030,200 elements.

    python benchmarks/bench_closure.py --q 4 --n-list 29,53,101
"""

import argparse
import time

import numpy as np

from hfmap import kernels
from hfmap.group import HeckeParams, generators, principal_congruence_index


def time_backend(backend: str, gens: np.ndarray, n: int, m: int, limit: int,
                 repeat: int) -> tuple[float, np.ndarray]:
    best = float("inf")
    keys = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        keys, done = kernels.closure_bfs(gens, n, m, limit, backend=backend)
        elapsed = time.perf_counter() - t0
        if not done:
            raise SystemExit(f"limit {limit} too small for n={n}")
        best = min(best, elapsed)
    return best, keys


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--q", type=int, default=4, choices=(3, 4, 6))
    parser.add_argument("--n-list", default="11,29,53,101")
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--limit", type=int, default=2 * 10**6)
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "numba" in backends:
        # trigger JIT compilation outside the timed region
        p = HeckeParams(args.q, 5)
        s, t, _ = generators(p)
        warm = np.asarray([s.components(), t.components()], dtype=np.int64)
        kernels.closure_bfs(warm, p.n, p.m, 10**4, backend="numba")

    print(f"{'n':>5} {'order':>9} " + " ".join(f"{b:>10}" for b in backends) + "  agree")
    for n_str in args.n_list.split(","):
        n = int(n_str)
        p = HeckeParams(args.q, n)
        s, t, _ = generators(p)
        gens = np.asarray([s.components(), t.components()], dtype=np.int64)
        expected = principal_congruence_index(p)
        times = []
        results = []
        for backend in backends:
            elapsed, keys = time_backend(backend, gens, n, p.m, args.limit, args.repeat)
            times.append(elapsed)
            results.append(keys)
            assert keys.shape[0] == expected, (backend, keys.shape[0], expected)
        agree = all(np.array_equal(results[0], k) for k in results[1:])
        cols = " ".join(f"{t * 1000:>8.1f}ms" for t in times)
        print(f"{n:>5} {expected:>9} {cols}  {agree}")


if __name__ == "__main__":
    main()
