#!/usr/bin/env python3
"""Head-to-head timing of the compiled and numpy kernel backends.

Runs each hot kernel on realistic inputs at several system sizes and
reports the median per-call time for both implementations plus the
speedup.  The kernels are O(n^2) table builders; whether the compiled
path wins depends on n and on how well the numpy expression fuses, so
the comparison is measured, not assumed.

Usage: python benchmarks/bench_kernels.py [--repeats 7] [--loops 50]
"""

import argparse
import statistics
import timeit

import numpy as np

from vsckin._kernels import available_backends

SIZES = (17, 65, 257, 1025)  # N+1 eigenmodes for N = 16..1024
BETA = 4.8281e-3


def _inputs(n, rng):
    s = rng.uniform(0.0, 0.05, size=n)
    freqs = np.sort(rng.normal(2000.0, 10.0, size=n))
    e_r = rng.uniform(-100.0, 2200.0, size=n + 1)
    e_p = e_r - 1200.0
    return s, freqs, e_r, e_p


def _time(func, repeats, loops):
    times = timeit.repeat(func, number=loops, repeat=repeats)
    return min(times) / loops  # best-of median is noisy; min is standard


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeats", type=int, default=7)
    parser.add_argument("--loops", type=int, default=50)
    args = parser.parse_args()

    backends = available_backends()
    if "cython" not in backends:
        print("compiled backend not importable; nothing to compare")
        return 1
    rng = np.random.default_rng(2026)

    header = f"{'kernel':<16} {'n':>6} {'numpy':>12} {'cython':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in SIZES:
        s, freqs, e_r, e_p = _inputs(n, rng)
        cases = {
            "fc_table": lambda impl: impl.fc_table(s),
            "thermal_bracket": lambda impl: impl.thermal_bracket(
                freqs, BETA, 2e-3, 50.0),
            "marcus_gaussian": lambda impl: impl.marcus_gaussian(
                e_r, e_p, 160.0, BETA),
        }
        for name, call in cases.items():
            t_np = _time(lambda: call(backends["numpy"]),
                         args.repeats, args.loops)
            t_cy = _time(lambda: call(backends["cython"]),
                         args.repeats, args.loops)
            worst = np.max(np.abs(call(backends["numpy"])
                                  - call(backends["cython"])))
            assert worst < 1e-12, f"{name} backends disagree by {worst:.2e}"
            print(f"{name:<16} {n:>6} {t_np * 1e6:>10.1f}us "
                  f"{t_cy * 1e6:>10.1f}us {t_np / t_cy:>7.2f}x")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
