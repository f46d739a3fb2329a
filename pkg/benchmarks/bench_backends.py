#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the three hot paths (per-order Laguerre moments over samples, the
weighted Laguerre sweep used by quadrature, and the two-mode RK4 stepper)
and prints one row per kernel with the speedup.

Run:  python benchmarks/bench_backends.py [--n-samples N] [--n-max M]
"""

import argparse
import time

import numpy as np


def best_of(fn, repeats=3):
    times = []
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n-samples", type=int, default=200_000)
    ap.add_argument("--n-max", type=int, default=400)
    ap.add_argument("--n-traj", type=int, default=20_000)
    ap.add_argument("--n-steps", type=int, default=500)
    args = ap.parse_args()

    from wignerbin import _core_py

    try:
        from wignerbin import _core
    except ImportError:
        _core = None

    rng = np.random.default_rng(0)
    xs = rng.uniform(0.0, 1600.0, args.n_samples)
    ws = rng.standard_normal(args.n_samples)
    a1 = 10.0 + 0.5 * (rng.standard_normal(args.n_traj) + 1j * rng.standard_normal(args.n_traj))
    a2 = 0.5 * (rng.standard_normal(args.n_traj) + 1j * rng.standard_normal(args.n_traj))

    cases = [
        ("laguerre_moments", lambda m: m.laguerre_moments(xs, args.n_max)),
        ("laguerre_dot", lambda m: m.laguerre_dot(xs, ws, args.n_max)),
        ("bh_rk4", lambda m: m.bh_rk4(a1, a2, 1.0, 0.25, 2e-4, args.n_steps)),
    ]

    print(f"{'kernel':<20} {'python [s]':>12} {'compiled [s]':>14} {'speedup':>9}")
    for name, call in cases:
        t_py = best_of(lambda: call(_core_py))
        if _core is not None:
            t_c = best_of(lambda: call(_core))
            print(f"{name:<20} {t_py:>12.3f} {t_c:>14.3f} {t_py / t_c:>8.1f}x")
        else:
            print(f"{name:<20} {t_py:>12.3f} {'(not built)':>14} {'-':>9}")


if __name__ == "__main__":
    main()
