#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure Python fallback.

Times the three inner loops that dominate sweeps and verification scans:
matrix products (element enumeration), matrix-vector signs (chamber
oracle), and bilinear pairings (pair classification).  Runs with just
the fallback when the compiled module is unavailable.
"""

from __future__ import annotations

import time

from kmlab import _kernels_py as py

try:
    from kmlab import _ckernels as ck
except ImportError:
    ck = None

RANK3 = (2, -2, -1, -2, 2, 0, -1, 0, 2)


def bench(label, fn, args, repeat):
    start = time.perf_counter()
    for _ in range(repeat):
        fn(*args)
    elapsed = time.perf_counter() - start
    rate = repeat / elapsed
    print(f"  {label:32s} {rate:12.0f} ops/s")
    return rate


def workload():
    s1 = (-1, 2, 1, 0, 1, 0, 0, 0, 1)
    m = RANK3
    for _ in range(6):
        m = py.mat_mul(m, s1, 3)
    roots = tuple(
        x for v in [(1, 0, 0), (2, 1, 0), (1, 2, 1), (3, 2, 0), (2, 1, 2)]
        for x in v
    )
    return m, roots


def main():
    m, roots = workload()
    d = (3, 2, 1)
    v = (2, 3, 1)
    cases = [
        ("mat_mul 3x3", "mat_mul", (m, m, 3), 200_000),
        ("mat_vec 3x3", "mat_vec", (m, v, 3), 400_000),
        ("bilinear pairing", "bilinear", (RANK3, d, v, 3), 400_000),
        ("batch_signs 5 roots", "batch_signs", (m, roots, 3, 5), 200_000),
    ]
    print("pure python:")
    py_rates = {}
    for label, name, args, repeat in cases:
        py_rates[name] = bench(label, getattr(py, name), args, repeat // 10)
    if ck is None:
        print("compiled module not available; only the fallback was timed")
        return
    print("compiled:")
    for label, name, args, repeat in cases:
        rate = bench(label, getattr(ck, name), args, repeat)
        print(f"  {'':32s} speedup x{rate / py_rates[name]:.1f}")


if __name__ == "__main__":
    main()
