#!/usr/bin/env python3
"""Benchmark the RK4 covariance kernel: compiled extension vs numpy fallback.

Runs the same damped-pair workload through both kernel implementations and
prints a timing table.  The workload matches the long preset evolutions:
shared bath, identical oscillators, squeezed initial state, dt = 0.005.

Usage: python3 benchmarks/bench_kernels.py [--repeats N]
"""

import argparse
import math
import time

import numpy as np

from twinbath import BathConfig, OscillatorPair, build_generator, tms_state
from twinbath import _kernels

try:
    from twinbath import _kernels_cy
except ImportError:  # extension not built on this platform
    _kernels_cy = None

_GAMMA0 = 2e-2 / math.pi


def _workload():
    gen = build_generator(
        OscillatorPair(), BathConfig("common", _GAMMA0, 1.0, 20.0)
    )
    return (
        np.ascontiguousarray(gen.drift),
        np.ascontiguousarray(gen.diffusion),
        np.ascontiguousarray(tms_state(2.0).sigma),
    )


def _time_run(impl, drift, diffusion, sigma0, n_steps, repeats):
    stride = max(1, n_steps // 100)
    n_samples = n_steps // stride
    best = math.inf
    result = None
    for _ in range(repeats):
        start = time.perf_counter()
        result = impl.rk4_evolve(
            drift, diffusion, sigma0, 0.005, n_samples, stride
        )
        best = min(best, time.perf_counter() - start)
    return best, result


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument(
        "--repeats", type=int, default=3, help="timed repetitions per cell"
    )
    args = parser.parse_args()

    drift, diffusion, sigma0 = _workload()
    print(f"{'steps':>10} {'fallback':>12} {'compiled':>12} {'speedup':>9}")
    for n_steps in (10_000, 100_000, 1_000_000):
        t_py, ref = _time_run(
            _kernels, drift, diffusion, sigma0, n_steps, args.repeats
        )
        if _kernels_cy is None:
            print(f"{n_steps:>10} {t_py:>11.4f}s {'absent':>12} {'-':>9}")
            continue
        t_cy, out = _time_run(
            _kernels_cy, drift, diffusion, sigma0, n_steps, args.repeats
        )
        agreement = float(np.max(np.abs(out - ref)))
        print(
            f"{n_steps:>10} {t_py:>11.4f}s {t_cy:>11.4f}s {t_py / t_cy:>8.1f}x"
            f"   (max deviation {agreement:.1e})"
        )
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
