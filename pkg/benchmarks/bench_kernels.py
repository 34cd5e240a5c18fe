"""Benchmark the compiled metric kernels against the pure numpy fallback.

Usage: python3 benchmarks/bench_kernels.py [--sizes 1000,5000,20000] [--reps 5]

Both backends are imported directly (the env-var switch is bypassed) so one
process can time them side by side on identical inputs.
"""

import argparse
import time

import numpy as np

from tlri.metrics import _kernels_py

try:
    from tlri.metrics import _ckernels
except ImportError:
    _ckernels = None

KERNELS = ["ks_statistic", "cliff_counts", "bin_counts"]


def make_inputs(n, seed=0):
    gen = np.random.Generator(np.random.PCG64(seed))
    a = gen.normal(50_000, 300, n)
    b = gen.normal(50_260, 300, n)
    lo, hi = min(a.min(), b.min()), max(a.max(), b.max())
    edges = np.linspace(lo, hi, 65)
    return a, b, edges


def time_kernel(backend, name, a, b, edges, reps):
    fn = getattr(backend, name)
    args = (a, edges) if name == "bin_counts" else (a, b)
    fn(*args)  # warm-up
    best = min(timed(fn, args) for _ in range(reps))
    return best


def timed(fn, args):
    start = time.perf_counter()
    fn(*args)
    return time.perf_counter() - start


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", default="1000,5000,20000,100000")
    parser.add_argument("--reps", type=int, default=5)
    args = parser.parse_args()
    sizes = [int(s) for s in args.sizes.split(",")]

    if _ckernels is None:
        print("compiled extension not built; showing fallback only")

    header = f"{'kernel':<14} {'n':>8} {'python (ms)':>12} {'cython (ms)':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        a, b, edges = make_inputs(n)
        for name in KERNELS:
            py = time_kernel(_kernels_py, name, a, b, edges, args.reps)
            if _ckernels is None:
                print(f"{name:<14} {n:>8} {py * 1e3:>12.3f} {'-':>12} {'-':>8}")
                continue
            cy = time_kernel(_ckernels, name, a, b, edges, args.reps)
            print(f"{name:<14} {n:>8} {py * 1e3:>12.3f} {cy * 1e3:>12.3f} "
                  f"{py / cy:>7.1f}x")


if __name__ == "__main__":
    main()
