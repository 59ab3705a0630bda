#!/usr/bin/env python3
"""Time the compiled hot kernels against their fallback implementations.

The package ships every inner loop twice: a scalar version compiled with
numba, and a NumPy (or plain interpreted) fallback selected by setting
FIREROUTE_NUMBA=0.  Both must produce bit-identical results; this script
calls each pair directly, verifies the outputs match, and reports timings.

Run with numba importable (the default install):

    python3 benchmarks/bench_kernels.py [--size 512] [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from fireroute._accel import NUMBA_ACTIVE
from fireroute import fire as fire_mod
from fireroute import planner as planner_mod


def best_of(fn, repeats):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def make_classes(size, seed=99):
    rng = np.random.default_rng(seed)
    classes = rng.choice(
        np.array([0, 1, 2], dtype=np.int8), size=(size, size), p=[0.10, 0.70, 0.20]
    )
    classes[0, 0] = 1
    classes[-1, -1] = 1
    return classes


def bench_search(size, repeats):
    terrain = make_classes(size)
    n = size - 1
    card = np.array([np.inf, 1.0, 100.0], dtype=np.float64)
    diag = np.array([np.inf, 1.4, 140.0], dtype=np.float64)
    d1 = np.array([1.0, 1.0, 100.0], dtype=np.float64)
    d2 = np.array([1.4, 1.4, 140.0], dtype=np.float64)
    args = (terrain, 0, 0, n, n, card, diag, d1, d2, False)

    compiled = planner_mod._search_jit(*args)
    fallback = planner_mod._search_loop(*args)
    same = (
        compiled[0] == fallback[0]
        and compiled[1] == fallback[1]
        and compiled[2] == fallback[2]
        and np.array_equal(compiled[3], fallback[3])
    )

    t_jit = best_of(lambda: planner_mod._search_jit(*args), repeats)
    t_py = best_of(lambda: planner_mod._search_loop(*args), 1)
    label = f"search {size}x{size} ({int(compiled[2])} expanded)"
    return label, t_jit, t_py, same


def bench_disc(size, repeats):
    sx = sy = size / 2.0
    r = size / 8.0
    x0 = max(0, math.ceil(sx - r))
    x1 = min(size - 1, math.floor(sx + r))
    y0 = max(0, math.ceil(sy - r))
    y1 = min(size - 1, math.floor(sy + r))

    m1 = np.zeros((size, size), dtype=np.bool_)
    n1 = int(fire_mod._disc_jit(m1, sx, sy, r, x0, x1, y0, y1))
    m2 = np.zeros((size, size), dtype=np.bool_)
    n2 = fire_mod._disc_vec(m2, sx, sy, r, x0, x1, y0, y1)
    same = n1 == n2 and np.array_equal(m1, m2)

    def run_jit():
        m = np.zeros((size, size), dtype=np.bool_)
        fire_mod._disc_jit(m, sx, sy, r, x0, x1, y0, y1)

    def run_vec():
        m = np.zeros((size, size), dtype=np.bool_)
        fire_mod._disc_vec(m, sx, sy, r, x0, x1, y0, y1)

    t_jit = best_of(run_jit, repeats)
    t_py = best_of(run_vec, repeats)
    return f"disc fill r={r:.0f}", t_jit, t_py, same


def bench_spread(size, repeats):
    sx = sy = size / 2.0
    r = size / 8.0
    base = np.zeros((size, size), dtype=np.bool_)
    bx0 = max(0, math.ceil(sx - r))
    bx1 = min(size - 1, math.floor(sx + r))
    by0 = max(0, math.ceil(sy - r))
    by1 = min(size - 1, math.floor(sy + r))
    fire_mod._disc_vec(base, sx, sy, r, bx0, bx1, by0, by1)
    x0, y0 = max(0, bx0 - 1), max(0, by0 - 1)
    x1, y1 = min(size - 1, bx1 + 1), min(size - 1, by1 + 1)

    flam = np.ones((size, size), dtype=np.float64)
    p = 0.35
    state = 0x0123456789ABCDEF

    m1 = base.copy()
    d1_, i1 = fire_mod._spread_jit(base, m1, flam, p, np.uint64(state), x0, x1, y0, y1)
    m2 = base.copy()
    d2_, i2 = fire_mod._spread_vec(base, m2, flam, p, state, x0, x1, y0, y1)
    same = int(d1_) == d2_ and int(i1) == i2 and np.array_equal(m1, m2)

    def run_jit():
        m = base.copy()
        fire_mod._spread_jit(base, m, flam, p, np.uint64(state), x0, x1, y0, y1)

    def run_vec():
        m = base.copy()
        fire_mod._spread_vec(base, m, flam, p, state, x0, x1, y0, y1)

    t_jit = best_of(run_jit, repeats)
    t_py = best_of(run_vec, repeats)
    win = f"{x1 - x0 + 1}x{y1 - y0 + 1}"
    return f"spread step, {win} window", t_jit, t_py, same


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=512, help="grid edge length")
    ap.add_argument("--repeats", type=int, default=5, help="timed repetitions (best kept)")
    args = ap.parse_args()

    if not NUMBA_ACTIVE:
        raise SystemExit(
            "numba is not active (FIREROUTE_NUMBA=0 or numba missing); "
            "there is nothing to compare against."
        )

    rows = [
        bench_search(args.size, args.repeats),
        bench_disc(args.size, args.repeats),
        bench_spread(args.size, args.repeats),
    ]

    width = max(len(r[0]) for r in rows)
    print(f"{'kernel':<{width}}  {'compiled':>10}  {'fallback':>10}  {'speedup':>8}  identical")
    for label, t_jit, t_py, same in rows:
        ratio = t_py / t_jit if t_jit > 0 else float("inf")
        print(
            f"{label:<{width}}  {t_jit * 1e3:>8.2f}ms  {t_py * 1e3:>8.2f}ms"
            f"  {ratio:>7.1f}x  {'yes' if same else 'NO'}"
        )
    if not all(r[3] for r in rows):
        raise SystemExit("kernel outputs diverged between compiled and fallback paths")


if __name__ == "__main__":
    main()
