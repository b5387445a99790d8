"""Two-mode Gaussian states as 4x4 covariance matrices.

Quadrature ordering is (x1, p1, x2, p2) with hbar = 1 and vacuum variance 1/2.
All quadratures are dimensionless: position is scaled by sqrt(omega) and
momentum by 1/sqrt(omega) at the frequency of the mode it belongs to (bare
omega_i for oscillator modes, Omega_+/- for normal modes), so a thermal mode
is isotropic with variance coth(omega/2T)/2 on both quadratures.

Everything in this module is an immutable value; operations are pure.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "SYMPLECTIC_FORM",
    "CovarianceState",
    "OscillatorPair",
    "NormalModeBasis",
    "vacuum_state",
    "thermal_state",
    "tms_state",
    "symplectic_eigenvalues",
    "normal_mode_basis",
    "rotate_to_modes",
]

# Block-diagonal symplectic form for ordering (x1, p1, x2, p2).
SYMPLECTIC_FORM = np.array(
    [
        [0.0, 1.0, 0.0, 0.0],
        [-1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, 1.0],
        [0.0, 0.0, -1.0, 0.0],
    ]
)

# Physicality slack: symplectic eigenvalues may undershoot 1/2 by this much
# before a state is rejected (accumulated roundoff, not physics).
_NU_TOL = 1e-9


def _as_matrix(sigma) -> np.ndarray:
    arr = np.asarray(sigma, dtype=float)
    if arr.shape != (4, 4) or not np.all(np.isfinite(arr)):
        raise ValueError("covariance matrix must be a finite 4x4 real matrix")
    return arr


def _symplectic_moduli(sigma: np.ndarray) -> np.ndarray:
    """Sorted moduli of the eigenvalues of i*Omega*sigma (each appears twice).

    For positive definite input these are the singular values of L^T Omega L
    with sigma = L L^T; the singular values of that normal matrix stay
    accurate under degeneracy, unlike a general eigendecomposition.
    """
    try:
        chol = np.linalg.cholesky(sigma)
    except np.linalg.LinAlgError:
        vals = np.linalg.eigvals(1j * SYMPLECTIC_FORM @ sigma)
        return np.sort(np.abs(vals))
    kern = chol.T @ SYMPLECTIC_FORM @ chol
    return np.sort(np.linalg.svd(kern, compute_uv=False))


@dataclass(frozen=True)
class CovarianceState:
    """A zero-mean two-mode Gaussian state.

    ``sigma`` holds the symmetrized second moments <{u_i, u_j}>/2.  The
    constructor enforces symmetry, positive definiteness and the bona-fide
    (Heisenberg) condition nu_- >= 1/2 - nu_tol.  The default tolerance
    admits only roundoff; trajectory samples of the damped generator pass a
    looser bound because its equilibrium-matched diffusion is not completely
    positive and lets strongly squeezed transients slip below 1/2 by a few
    1e-3 before relaxation wins.
    """

    sigma: np.ndarray = field(repr=False)
    nu_tol: float = field(default=_NU_TOL, repr=False, compare=False)

    def __post_init__(self):
        tol = float(self.nu_tol)
        if not 0.0 <= tol <= 0.05:
            raise ValueError("nu_tol must lie in [0, 0.05]")
        object.__setattr__(self, "nu_tol", tol)
        arr = _as_matrix(self.sigma)
        scale = max(1.0, float(np.max(np.abs(arr))))
        if np.max(np.abs(arr - arr.T)) > 1e-12 * scale:
            raise ValueError("covariance matrix must be symmetric (rtol 1e-12)")
        arr = (arr + arr.T) / 2.0
        if np.any(np.linalg.eigvalsh(arr) <= 0.0):
            raise ValueError("covariance matrix must be positive definite")
        moduli = _symplectic_moduli(arr)
        if moduli[0] < 0.5 - tol:
            raise ValueError(
                "state violates the Heisenberg bound: "
                f"min symplectic eigenvalue {moduli[0]:.12g} < 1/2"
            )
        arr.flags.writeable = False
        object.__setattr__(self, "sigma", arr)

    def block(self, i: int, j: int) -> np.ndarray:
        """2x2 block of mode pair (i, j), modes indexed 0 and 1."""
        return self.sigma[2 * i : 2 * i + 2, 2 * j : 2 * j + 2].copy()

    def with_sigma(self, sigma) -> "CovarianceState":
        return CovarianceState(sigma)


@dataclass(frozen=True)
class OscillatorPair:
    """Bare frequencies and position-position coupling, in units of omega1."""

    omega1: float = 1.0
    omega2: float = 1.0
    lam: float = 0.0

    def __post_init__(self):
        if not (self.omega1 > 0.0 and self.omega2 > 0.0):
            raise ValueError("oscillator frequencies must be positive")
        # lambda^2 < omega1^2 * omega2^2 keeps both normal modes oscillatory.
        if not self.lam**2 < (self.omega1 * self.omega2) ** 2:
            raise ValueError(
                "unstable pair: require lambda^2 < omega1^2 * omega2^2, got "
                f"lambda={self.lam}, omega1={self.omega1}, omega2={self.omega2}"
            )

    @property
    def identical(self) -> bool:
        return self.omega1 == self.omega2


@dataclass(frozen=True)
class NormalModeBasis:
    """Mixing angle and frequencies of the normal modes (X+, X-).

    ``theta`` parametrizes the orthogonal transform diagonalizing the
    stiffness matrix [[omega1^2, lambda], [lambda, omega2^2]]; the plus mode
    (frequency omega_plus) always occupies the first slot.
    """

    theta: float
    omega_plus: float
    omega_minus: float

    def __post_init__(self):
        if not (self.omega_plus >= self.omega_minus > 0.0):
            raise ValueError("require omega_plus >= omega_minus > 0")

    def mode_matrix(self) -> np.ndarray:
        """Orthogonal map (x1, x2) -> (X+, X-).

        The matrix is a symmetric involution, so it is its own inverse; the
        same matrix also maps momenta.
        """
        s, c = math.sin(self.theta), math.cos(self.theta)
        return np.array([[s, c], [c, -s]])

    def coupling_vector(self) -> np.ndarray:
        """Coefficients of (x1 + x2) in the normal coordinates."""
        s, c = math.sin(self.theta), math.cos(self.theta)
        return np.array([c + s, c - s])


def vacuum_state() -> CovarianceState:
    return CovarianceState(np.eye(4) / 2.0)


def thermal_state(nbar1: float, nbar2: float) -> CovarianceState:
    """Product of two isotropic thermal modes with the given occupancies."""
    if nbar1 < 0.0 or nbar2 < 0.0:
        raise ValueError("thermal occupancies must be nonnegative")
    return CovarianceState(np.diag([nbar1 + 0.5] * 2 + [nbar2 + 0.5] * 2))


def tms_state(r: float) -> CovarianceState:
    """Two-mode squeezed state with squeezing amplitude r.

    Diagonal variances cosh(2r)/2 in every quadrature, correlations
    <x1 x2> = sinh(2r)/2 and <p1 p2> = -sinh(2r)/2; pure for every r.
    """
    if not (isinstance(r, (int, float)) and math.isfinite(r)):
        raise ValueError("squeezing amplitude must be finite")
    if r < 0.0:
        raise ValueError("squeezing amplitude must be nonnegative")
    if r > 10.0:
        raise ValueError("squeezing amplitude above 10 would overflow cosh")
    ch, sh = math.cosh(2.0 * r) / 2.0, math.sinh(2.0 * r) / 2.0
    sigma = np.array(
        [
            [ch, 0.0, sh, 0.0],
            [0.0, ch, 0.0, -sh],
            [sh, 0.0, ch, 0.0],
            [0.0, -sh, 0.0, ch],
        ]
    )
    return CovarianceState(sigma)


def symplectic_eigenvalues(state: CovarianceState) -> tuple[float, float]:
    """The pair (nu_minus, nu_plus), nu_minus <= nu_plus.

    Computed as the moduli of the eigenvalues of i*Omega*sigma; each modulus
    is doubly degenerate and the degenerate copies are averaged.
    """
    moduli = _symplectic_moduli(state.sigma)
    return (moduli[0] + moduli[1]) / 2.0, (moduli[2] + moduli[3]) / 2.0


def normal_mode_basis(pair: OscillatorPair) -> NormalModeBasis:
    """Diagonalize the stiffness matrix of a coupled pair.

    Branch convention: theta = atan2(2*lambda, omega2^2 - omega1^2) / 2, which
    gives theta = 0 for a detuned uncoupled pair (omega2 > omega1) and exactly
    pi/4 for identical oscillators at any coupling, including lambda = 0.
    """
    w1sq, w2sq = pair.omega1**2, pair.omega2**2
    gap = math.hypot(w2sq - w1sq, 2.0 * pair.lam)
    mean = (w1sq + w2sq) / 2.0
    om_plus_sq = mean + gap / 2.0
    om_minus_sq = mean - gap / 2.0
    if om_minus_sq <= 0.0:
        raise ValueError("unstable pair: imaginary minus-mode frequency")
    if pair.omega1 == pair.omega2:
        theta = math.pi / 4.0
    else:
        theta = math.atan2(2.0 * pair.lam, w2sq - w1sq) / 2.0
    return NormalModeBasis(
        theta=theta,
        omega_plus=math.sqrt(om_plus_sq),
        omega_minus=math.sqrt(om_minus_sq),
    )


def rotate_to_modes(state: CovarianceState, basis: NormalModeBasis) -> CovarianceState:
    """Congruence transform by the basis rotation, positions and momenta alike.

    The mode matrix is an involution, so applying the operation twice with the
    same basis restores the original state.  Symplectic eigenvalues are
    preserved exactly (up to roundoff).
    """
    m = basis.mode_matrix()
    rot = np.zeros((4, 4))
    rot[0::2, 0::2] = m  # positions
    rot[1::2, 1::2] = m  # momenta
    return CovarianceState(rot @ state.sigma @ rot.T)
