"""Reference integrator kernel in pure numpy.

Semantics match the compiled extension exactly: fixed-step classical RK4 on
the covariance equation of motion with per-step re-symmetrization, emitting
every ``stride``-th step.
"""

from __future__ import annotations

import numpy as np


def rk4_evolve(
    drift: np.ndarray,
    diffusion: np.ndarray,
    sigma0: np.ndarray,
    dt: float,
    n_samples: int,
    stride: int,
) -> np.ndarray:
    """Integrate dS/dt = A S + S A^T + D; return (n_samples+1, 4, 4) samples."""
    a = np.asarray(drift, dtype=float)
    at = np.ascontiguousarray(a.T)
    d = np.asarray(diffusion, dtype=float)
    s = np.array(sigma0, dtype=float)
    out = np.empty((n_samples + 1, 4, 4))
    out[0] = s
    half = 0.5 * dt
    sixth = dt / 6.0
    for n in range(1, n_samples + 1):
        for _ in range(stride):
            k1 = a @ s + s @ at + d
            s2 = s + half * k1
            k2 = a @ s2 + s2 @ at + d
            s3 = s + half * k2
            k3 = a @ s3 + s3 @ at + d
            s4 = s + dt * k3
            k4 = a @ s4 + s4 @ at + d
            s += sixth * (k1 + 2.0 * (k2 + k3) + k4)
            s = 0.5 * (s + s.T)
        out[n] = s
    return out
