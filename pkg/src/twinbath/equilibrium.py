"""Stationary variances of a damped harmonic mode.

The undamped thermal value coth(omega/2T)/2 is isotropic in the dimensionless
quadratures.  At finite coupling the equilibrium state of a mode damped by an
Ohmic environment (spectral strength eta0, sharp frequency cutoff) is slightly
anisotropic: the position variance is suppressed and the momentum variance
enhanced, by amounts of order (eta0/pi)·log(cutoff).  Both are computed here
exactly from the imaginary-frequency representation

    <x^2> = T * sum_n 1 / (omega^2 + nu_n^2 + |nu_n| g(nu_n)),
    <p^2> = T * sum_n (omega^2 + |nu_n| g(nu_n)) / (...),

with Matsubara frequencies nu_n = 2 pi T n and Laplace-domain friction
g(nu) = (2 eta0/pi) atan(cutoff/nu); the T = 0 limit becomes an integral.
Slowly converging sums carry analytic 1/nu^2 and 1/nu^4 tail corrections.

Returned variances are dimensionless: tau_x = omega <x^2>, tau_p = <p^2>/omega.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np
from scipy.integrate import quad
from scipy.special import polygamma

__all__ = ["thermal_variance", "dressed_variances"]

# Below this temperature the Matsubara spacing is too fine to sum directly and
# the zero-temperature integral is exact to double precision anyway.
_T_FLOOR = 1e-6


def thermal_variance(omega: float, temperature: float) -> float:
    """Isotropic variance coth(omega/2T)/2 of an undamped thermal mode."""
    if omega <= 0.0:
        raise ValueError("frequency must be positive")
    if temperature < 0.0:
        raise ValueError("temperature must be nonnegative")
    if temperature == 0.0:
        return 0.5
    return 0.5 / math.tanh(omega / (2.0 * temperature))


def _friction(nu, eta0: float, cutoff: float):
    """Laplace-domain friction kernel g(nu) for the sharp-cutoff Ohmic bath."""
    return (2.0 * eta0 / math.pi) * np.arctan(cutoff / nu)


@lru_cache(maxsize=4096)
def dressed_variances(
    omega: float, eta0: float, cutoff: float, temperature: float
) -> tuple[float, float]:
    """Dimensionless equilibrium variances (tau_x, tau_p) of a damped mode.

    ``eta0`` is the zero-frequency friction coefficient of the mode (for a
    collective bath channel this is the mode's diagonal damping entry, not the
    per-oscillator coupling).  For eta0 -> 0 both values reduce to the
    undamped coth(omega/2T)/2.
    """
    if omega <= 0.0 or cutoff <= 0.0:
        raise ValueError("frequency and cutoff must be positive")
    if eta0 < 0.0 or temperature < 0.0:
        raise ValueError("friction and temperature must be nonnegative")
    if eta0 == 0.0:
        v = thermal_variance(omega, temperature)
        return v, v

    g0 = 2.0 * eta0 * cutoff / math.pi  # limit of nu*g(nu) at large nu
    g2 = 2.0 * eta0 * cutoff**3 / (3.0 * math.pi)

    if temperature <= _T_FLOOR:
        upper = 1e6 * max(cutoff, omega)

        def integrand_x(nu):
            return 1.0 / (omega**2 + nu**2 + nu * _friction(nu, eta0, cutoff))

        def integrand_p(nu):
            num = omega**2 + nu * _friction(nu, eta0, cutoff)
            return num / (omega**2 + nu**2 + nu * _friction(nu, eta0, cutoff))

        opts = dict(limit=400, epsabs=1e-13, epsrel=1e-12, points=[omega, cutoff])
        x2 = quad(integrand_x, 0.0, upper, **opts)[0] / math.pi
        p2 = quad(integrand_p, 0.0, upper, **opts)[0] / math.pi
        # analytic tails of the truncated integrals
        c = omega**2 + g0
        x2 += (1.0 / upper - c / (3.0 * upper**3)) / math.pi
        p2 += (c / upper - (c**2 + g2) / (3.0 * upper**3)) / math.pi
        return omega * x2, p2 / omega

    step = 2.0 * math.pi * temperature
    n_terms = int(40.0 * cutoff / step) + 4000
    nu = step * np.arange(1, n_terms + 1)
    ng = nu * _friction(nu, eta0, cutoff)
    den = omega**2 + nu**2 + ng
    sum_x = float(np.sum(1.0 / den))
    sum_p = float(np.sum((omega**2 + ng) / den))

    # Tail corrections: summands behave as 1/nu^2 - c/nu^4 (position) and
    # c/nu^2 - (c^2 + g2)/nu^4 (momentum) beyond the cutoff.
    c = omega**2 + g0
    psi1 = float(polygamma(1, n_terms + 1))  # sum_{k>N} k^-2
    psi3 = float(polygamma(3, n_terms + 1)) / 6.0  # sum_{k>N} k^-4
    tail2 = psi1 / step**2
    tail4 = psi3 / step**4
    sum_x += tail2 - c * tail4
    sum_p += c * tail2 - (c**2 + g2) * tail4

    x2 = temperature * (1.0 / omega**2 + 2.0 * sum_x)
    p2 = temperature * (1.0 + 2.0 * sum_p)
    return omega * x2, p2 / omega
