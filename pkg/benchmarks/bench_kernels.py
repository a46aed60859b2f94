"""Time the compiled kernels against the numpy fallback.

    python benchmarks/bench_kernels.py [--repeat N] [--json]
"""
import argparse
import json
import math
import statistics
import time

import numpy as np

from pgap import _backend
from pgap.sieve import _small_primes, primes_up_to
from pgap.sqfree import compatible_differences


def clique_graph(m):
    """Compatibility graph on the neighbours of 0 in Z_m, no symmetry reduction."""
    nbrs = compatible_differences(m)
    ok = set(nbrs)
    index = {v: i for i, v in enumerate(nbrs)}
    adj = [0] * len(nbrs)
    for v in nbrs:
        for w in nbrs:
            if v != w and (w - v) % m in ok:
                adj[index[v]] |= 1 << index[w]
    return adj


def cases():
    x = 2 * 10**7
    base = _small_primes(math.isqrt(x))
    t = primes_up_to(2 * 10**6)
    ps = t.upto(10**6)
    gaps = np.diff(t.primes)
    rng = np.random.default_rng(7)
    codes = rng.integers(0, 3, size=2 * 10**6, dtype=np.uint8)
    lookup = t.is_prime_array()
    graph = clique_graph(205)
    return {
        "sieve_segment (10^7 odds)": lambda k: k.sieve_segment(3, 10**7, base),
        "window_min_max (k=5, 1.5e5 gaps)": lambda k: k.window_min_max(gaps, 5),
        "longest_run (2e6 codes)": lambda k: k.longest_run(codes, 0),
        "square_shift_hits (h<=30, pi(1e6))": lambda k: k.square_shift_hits(ps, lookup, 30),
        "max_clique (Z_205, unreduced)": lambda k: k.max_clique(graph, 10**8),
    }


def timeit(fn, kernels, repeat):
    fn(kernels)  # warm-up
    samples = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn(kernels)
        samples.append(time.perf_counter() - start)
    return statistics.median(samples)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--json", action="store_true")
    args = ap.parse_args()
    py = _backend.python_kernels
    cy = _backend.compiled_kernels
    rows = []
    for name, fn in cases().items():
        t_py = timeit(fn, py, args.repeat)
        t_cy = timeit(fn, cy, args.repeat) if cy is not None else None
        rows.append({"kernel": name, "python_s": t_py, "compiled_s": t_cy,
                     "speedup": t_py / t_cy if t_cy else None})
    if args.json:
        print(json.dumps(rows, indent=2))
        return
    if cy is None:
        print("compiled kernels not built; showing the fallback only")
    print(f"{'kernel':40s} {'python':>10s} {'compiled':>10s} {'speedup':>8s}")
    for r in rows:
        c = f"{r['compiled_s']:10.4f}" if r["compiled_s"] is not None else f"{'-':>10s}"
        s = f"{r['speedup']:7.1f}x" if r["speedup"] else f"{'-':>8s}"
        print(f"{r['kernel']:40s} {r['python_s']:10.4f} {c} {s}")


if __name__ == "__main__":
    main()
