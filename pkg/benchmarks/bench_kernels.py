#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy reference.

Workload: the full validation-and-scan pipeline (order closure, meet/join
tables, M3 / N5 / semimodularity scans) over every lattice of an enumerated
universe, which is exactly the hot path of exhaustive verification.

Usage: python3 benchmarks/bench_kernels.py [--max-grid P,Q] [--max-rank N] [--reps R]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from slimrect._kernels import pure

try:
    from slimrect._kernels import _fast
except ImportError:
    _fast = None

from slimrect.universe import enumerate_sr


def workload_arrays(universe):
    out = []
    for L in universe.lattices():
        n = L.n
        heights = np.zeros(n, dtype=np.int32)
        down = [[] for _ in range(n)]
        for h, lv in enumerate(L.levels):
            for x in lv:
                heights[x] = h
        for lo, hi in L.cover_pairs():
            down[hi].append(lo)
        order = np.fromiter((x for lv in L.levels for x in lv), dtype=np.int32, count=n)
        offsets = np.zeros(n + 1, dtype=np.int32)
        flat = []
        for x in range(n):
            offsets[x + 1] = offsets[x] + len(down[x])
            flat.extend(sorted(down[x]))
        out.append((n, order, offsets, np.asarray(flat, dtype=np.int32), heights))
    return out


def run_backend(impl, arrays, reps):
    t0 = time.perf_counter()
    sink = 0
    for _ in range(reps):
        for n, order, offsets, flat, heights in arrays:
            leq = impl.closure(n, order, offsets, flat)
            meet, join, bad = impl.meet_join(n, leq, heights)
            assert not bad
            lb = leq.astype(bool)
            incomp = ~(lb | lb.T)
            sink += len(impl.m3_list(n, meet, join, incomp))
            sink += len(impl.n5_list(n, meet, join, leq, incomp))
            sink += len(impl.semimodular_bad(n, meet, join, heights))
    return time.perf_counter() - t0, sink


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--max-grid", default="3,3")
    parser.add_argument("--max-rank", type=int, default=2)
    parser.add_argument("--reps", type=int, default=20)
    args = parser.parse_args()
    p, q = (int(v) for v in args.max_grid.split(","))

    universe = enumerate_sr(p, q, args.max_rank)
    arrays = workload_arrays(universe)
    sizes = [a[0] for a in arrays]
    print(
        f"workload: {len(arrays)} lattices (n = {min(sizes)}..{max(sizes)}), "
        f"{args.reps} repetitions"
    )

    pure_t, pure_sink = run_backend(pure, arrays, args.reps)
    print(f"pure (numpy reference): {pure_t:8.3f} s")
    if _fast is None:
        print("compiled kernels not built; install with Cython available to compare")
        return
    fast_t, fast_sink = run_backend(_fast, arrays, args.reps)
    assert fast_sink == pure_sink, "backends disagree"
    print(f"compiled (Cython):      {fast_t:8.3f} s")
    print(f"speedup:                {pure_t / fast_t:8.2f}x")


if __name__ == "__main__":
    main()
