"""Timing comparison of the compiled and pure kernel backends.

Runs the two hot kernels (weighted shift-product accumulation and the
direct box-norm sum) through mhtkit.backend.get_impl with identical inputs
and reports per-call times plus the speedup ratio.

Usage: python benchmarks/bench_kernels.py [--size 4096] [--repeat 5]
"""

import argparse
import time

import numpy as np

from mhtkit import backend


def _time_call(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_shift_product(impl, size, rng):
    k = 2
    values = [rng.standard_normal(size) + 1j * rng.standard_normal(size)
              for _ in range(k + 1)]
    offsets = np.zeros(k + 1, dtype=np.int64)
    mults = np.arange(k + 1, dtype=np.int64)
    ts_pos = np.arange(1, 257, dtype=np.int64)
    ts = np.empty(2 * ts_pos.size, dtype=np.int64)
    ts[0::2], ts[1::2] = ts_pos, -ts_pos
    weights = np.empty(ts.size, dtype=np.complex128)
    weights[0::2], weights[1::2] = 1.0 / ts_pos, -1.0 / ts_pos
    return lambda: backend.shift_product_sum(
        values, offsets, mults, ts, weights, True, 0, size - 1, impl=impl)


def bench_direct_norm(impl, n, d, rng):
    vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return lambda: backend.gowers_raw_direct(vals, d, impl=impl)


def bench_recursive_norm(impl, n, d, rng):
    vals = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    return lambda: backend.gowers_raw_recursive(vals, d, impl=impl)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=4096,
                        help="signal length for the shift-product kernel")
    parser.add_argument("--repeat", type=int, default=5,
                        help="repetitions; best time is reported")
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()

    names = backend.available_backends()
    if "compiled" not in names:
        print("compiled backend unavailable; showing pure-only timings")

    cases = [
        ("shift_product k=2", lambda impl: bench_shift_product(
            impl, args.size, np.random.default_rng(args.seed))),
        ("direct U^3 N=24", lambda impl: bench_direct_norm(
            impl, 24, 3, np.random.default_rng(args.seed))),
        ("direct U^4 N=16", lambda impl: bench_direct_norm(
            impl, 16, 4, np.random.default_rng(args.seed))),
        ("recursive U^3 N=256", lambda impl: bench_recursive_norm(
            impl, 256, 3, np.random.default_rng(args.seed))),
    ]

    header = f"{'kernel':<22}{'pure (s)':>12}{'compiled (s)':>14}{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, make in cases:
        t_pure = _time_call(make(backend.get_impl("pure")), args.repeat)
        if "compiled" in names:
            t_comp = _time_call(make(backend.get_impl("compiled")),
                                args.repeat)
            print(f"{label:<22}{t_pure:>12.6f}{t_comp:>14.6f}"
                  f"{t_pure / t_comp:>10.1f}x")
        else:
            print(f"{label:<22}{t_pure:>12.6f}{'-':>14}{'-':>10}")


if __name__ == "__main__":
    main()
