"""Time the numba and numpy batch kernels on the same inputs.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--full]

Workloads: every labeled graph on 6 vertices, one 2^18 chunk of the 7-vertex
population (the whole 2^21 population with --full), and 2000 random K4-free
graphs on 20 vertices.  Both backends must return identical arrays; the
script exits non-zero otherwise.
"""

from __future__ import annotations

import argparse
import sys
import time

import numpy as np

from tripack import _kernels as K
from tripack.explorer import random_instances

FIELDS = ("e", "t", "k4_free", "r", "r2", "packing", "classes_disjoint", "hall_ok", "labels")


def workloads(full: bool):
    yield "n=6 exhaustive", K.rows_from_edge_masks(6, np.arange(1 << 15)), None
    stop = 1 << 21 if full else 1 << 18
    yield f"n=7 masks [0, {stop})", K.rows_from_edge_masks(7, np.arange(stop)), None
    rows = np.array([G.rows for G, _, _ in random_instances(20, 2000, seed=0)], dtype=np.int64)
    yield "n=20 random x2000", rows, 3


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--full", action="store_true", help="time the whole n=7 population")
    args = parser.parse_args(argv)
    if not K.HAVE_NUMBA:
        print("numba is not installed; nothing to compare", file=sys.stderr)
        return 1

    start = time.perf_counter()
    K.analyze_numba(K.rows_from_edge_masks(4, np.arange(64)))
    print(f"numba compile/load: {time.perf_counter() - start:.2f}s")
    print(f"{'workload':<24}{'graphs':>9}{'numba s':>10}{'numpy s':>10}{'speedup':>9}")
    ok = True
    for name, rows, cap in workloads(args.full):
        a, b = K.analyze_numba(rows, cap), K.analyze_numpy(rows, cap)
        same = all(np.array_equal(getattr(a, f), getattr(b, f)) for f in FIELDS)
        ok &= same
        t_numba = best_of(lambda: K.analyze_numba(rows, cap), args.repeat)
        t_numpy = best_of(lambda: K.analyze_numpy(rows, cap), args.repeat)
        flag = "" if same else "  MISMATCH"
        print(f"{name:<24}{len(rows):>9}{t_numba:>10.3f}{t_numpy:>10.3f}{t_numpy / t_numba:>8.1f}x{flag}")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
