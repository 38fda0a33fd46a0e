#!/usr/bin/env python3
"""Benchmark the compiled stepping kernels against the Python fallback.

Times the full-space stepper at several register sizes and the 2D stepper,
checks that both backends produce the same state, and prints a speedup
table. Run as `python benchmarks/bench_kernels.py [--steps N]`.
"""

import argparse
import math
import time

import numpy as np

from adiabatic_dj._kernels import _py_stepper

try:
    from adiabatic_dj._kernels import _stepper as compiled
except ImportError:
    compiled = None

INV_SQRT2 = 1.0 / math.sqrt(2.0)


def make_case(n: int):
    dim = 1 << n
    u1 = np.full(dim, 1.0 / math.sqrt(dim), dtype=complex)
    u2 = np.zeros(dim, dtype=complex)
    u2[0::2] = 1.0 / math.sqrt(dim / 2)
    u2 -= np.vdot(u1, u2) * u1
    u2 /= np.linalg.norm(u2)
    return u1, u2


def best_of(fn, repeats=5):
    best = math.inf
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_full(impl, n, steps, dt, s_mid):
    u1, u2 = make_case(n)

    def run():
        psi = u1.astype(complex).copy()
        impl.run_full_steps(psi, u1, u2, INV_SQRT2, s_mid, dt)
        return psi

    return best_of(run), run()


def bench_2d(impl, steps, dt, s_mid):
    def run():
        pq = np.array([1.0 + 0j, 0j])
        impl.run_2d_steps(pq, INV_SQRT2, s_mid, dt)
        return pq

    return best_of(run), run()


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--steps", type=int, default=8000, help="steps per run (default 8000)")
    args = parser.parse_args()

    steps = args.steps
    dt = 40.0 / steps
    s_mid = (np.arange(steps) + 0.5) / steps

    if compiled is None:
        print("compiled kernels not built; showing the Python fallback only\n")

    print(f"{steps} steps per run, best of 5")
    print(f"{'kernel':<18}{'python':>12}{'compiled':>12}{'speedup':>10}   max |diff|")
    for n in (6, 8, 10, 12):
        t_py, psi_py = bench_full(_py_stepper, n, steps, dt, s_mid)
        if compiled is not None:
            t_c, psi_c = bench_full(compiled, n, steps, dt, s_mid)
            diff = float(np.abs(psi_py - psi_c).max())
            print(
                f"{'full n=%-2d' % n:<18}{t_py * 1e3:>10.1f}ms{t_c * 1e3:>10.1f}ms"
                f"{t_py / t_c:>9.1f}x   {diff:.2e}"
            )
        else:
            print(f"{'full n=%-2d' % n:<18}{t_py * 1e3:>10.1f}ms{'-':>12}{'-':>10}")
    t_py, pq_py = bench_2d(_py_stepper, steps, dt, s_mid)
    if compiled is not None:
        t_c, pq_c = bench_2d(compiled, steps, dt, s_mid)
        diff = float(np.abs(pq_py - pq_c).max())
        print(
            f"{'effective-2d':<18}{t_py * 1e3:>10.1f}ms{t_c * 1e3:>10.1f}ms"
            f"{t_py / t_c:>9.1f}x   {diff:.2e}"
        )
    else:
        print(f"{'effective-2d':<18}{t_py * 1e3:>10.1f}ms{'-':>12}{'-':>10}")


if __name__ == "__main__":
    main()
