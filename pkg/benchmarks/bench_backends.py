#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Run:  python3 benchmarks/bench_backends.py [--repeats 5]
"""

import argparse
import math
import time

import numpy as np

from orbitwave import _kernels_numpy

try:
    from orbitwave import _kernels_numba
except ImportError:
    _kernels_numba = None


def timeit(fn, repeats):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_case(name, make_fn, repeats):
    row = {"case": name}
    for label, mod in (("numba", _kernels_numba), ("numpy", _kernels_numpy)):
        if mod is None:
            row[label] = None
            continue
        fn = make_fn(mod)
        fn()  # warm (JIT compile / page in)
        row[label] = timeit(fn, repeats)
    return row


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    x_grid = np.ascontiguousarray(np.linspace(0.0, 800.0, 200_000))
    cos_grid = np.ascontiguousarray(np.linspace(-1.0, 1.0, 200_000))
    mean_anom = np.ascontiguousarray(rng.uniform(0.0, 2.0 * math.pi, 1_000_000))
    smooth_vals = np.ascontiguousarray(np.abs(rng.normal(size=4000)))
    smooth_sigma = np.ascontiguousarray(rng.uniform(3.0, 80.0, 4000))

    def laguerre(mod):
        sign = np.empty_like(x_grid)
        logabs = np.empty_like(x_grid)
        return lambda: mod.laguerre_log(99, 101.0, x_grid, sign, logabs)

    def legendre(mod):
        sign = np.empty_like(cos_grid)
        logabs = np.empty_like(cos_grid)
        return lambda: mod.legendre_norm_log(100, 20, cos_grid, sign, logabs)

    def hermite(mod):
        sign = np.empty_like(x_grid)
        logabs = np.empty_like(x_grid)
        return lambda: mod.hermite_log(50, x_grid, sign, logabs)

    def kepler(mod):
        out = np.empty_like(mean_anom)
        return lambda: mod.kepler_solve(mean_anom, 0.8366600265340756, out, 1e-13, 60)

    def smoothing(mod):
        out = np.empty_like(smooth_vals)
        return lambda: mod.gaussian_smooth(smooth_vals, smooth_sigma, out)

    cases = [
        ("laguerre_log deg-99 x200k", laguerre),
        ("legendre_norm l=100 m=20 x200k", legendre),
        ("hermite_log deg-50 x200k", hermite),
        ("kepler_solve 1M ecc=0.84", kepler),
        ("gaussian_smooth 4k grid", smoothing),
    ]

    print(f"{'case':34s} {'numba':>10s} {'numpy':>10s} {'speedup':>8s}")
    for name, make_fn in cases:
        row = bench_case(name, make_fn, args.repeats)
        nb = row["numba"]
        nq = row["numpy"]
        nb_s = f"{nb * 1e3:8.1f}ms" if nb is not None else "       -"
        ratio = f"{nq / nb:7.1f}x" if nb else "      -"
        print(f"{name:34s} {nb_s:>10s} {nq * 1e3:8.1f}ms {ratio:>8s}")


if __name__ == "__main__":
    main()
