#!/usr/bin/env python3
"""Benchmark the compiled sweep/QL kernels against the pure-Python twins.

Usage: python benchmarks/bench_kernels.py [--sizes 100,1000,10000]
"""
import argparse
import time

import numpy as np

from gjquad import _kernel_py
from gjquad.core import DEFAULT_CONFIG

try:
    from gjquad import _kernel
except ImportError:
    _kernel = None


def time_sweep(kernel, n, alpha, beta, repeats=3):
    cfg = DEFAULT_CONFIG
    m = n // 2
    nodes = np.empty(m)
    us = np.empty(m)
    vs = np.empty(m)
    yps = np.empty(m)
    its = np.zeros(m, dtype=np.int64)
    tms = np.zeros(m, dtype=np.int64)
    y0, yp0 = (0.0, 1.0) if n % 2 else (1.0, 0.0)
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        count, code = kernel.sweep(float(n), alpha, beta, 0.0, y0, yp0, m,
                                   cfg.fp_tol, cfg.taylor_tol, cfg.max_fp_iters,
                                   cfg.max_taylor_terms, cfg.boundary,
                                   nodes, us, vs, yps, its, tms)
        best = min(best, time.perf_counter() - t0)
        assert count == m and code == 0
    return best


def time_ql(kernel, n, repeats=3):
    rng = np.random.default_rng(42)
    d0 = rng.normal(size=n)
    e0 = np.abs(rng.normal(size=n)) + 0.1
    e0[-1] = 0.0
    best = float("inf")
    for _ in range(repeats):
        d = d0.copy()
        e = e0.copy()
        z = np.zeros(n)
        z[0] = 1.0
        t0 = time.perf_counter()
        kernel.ql_first_components(d, e, z, DEFAULT_CONFIG.eps)
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="100,1000,10000")
    args = ap.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    print(f"{'kernel':>8} {'op':>6} {'n':>8} {'time':>12} {'speedup':>9}")
    for n in sizes:
        t_py = time_sweep(_kernel_py, n, 0.4, -0.3, repeats=1 if n >= 10000 else 3)
        print(f"{'py':>8} {'sweep':>6} {n:>8} {t_py:>11.4f}s {'1.0x':>9}")
        if _kernel is not None:
            t_c = time_sweep(_kernel, n, 0.4, -0.3)
            print(f"{'c':>8} {'sweep':>6} {n:>8} {t_c:>11.4f}s {t_py / t_c:>8.1f}x")
    for n in sizes:
        if n > 2000:
            continue
        t_py = time_ql(_kernel_py, n, repeats=1)
        print(f"{'py':>8} {'ql':>6} {n:>8} {t_py:>11.4f}s {'1.0x':>9}")
        if _kernel is not None:
            t_c = time_ql(_kernel, n)
            print(f"{'c':>8} {'ql':>6} {n:>8} {t_c:>11.4f}s {t_py / t_c:>8.1f}x")
    if _kernel is None:
        print("compiled kernel unavailable; only the fallback was timed")


if __name__ == "__main__":
    main()
