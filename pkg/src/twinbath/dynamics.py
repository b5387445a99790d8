"""Weak-coupling Markovian dynamics of two thermally damped oscillators.

Builds the drift/diffusion generator for a shared or per-oscillator Ohmic
environment, integrates the covariance equation of motion with fixed-step
RK4, and assembles steady and asymptotic states.  Bare matrices follow the
interleaved (x1, p1, x2, p2) ordering; normal-mode matrices interleave
(X+, P+, X-, P-).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from ._backend import rk4_evolve
from .equilibrium import dressed_variances, thermal_variance
from .states import (
    CovarianceState,
    NormalModeBasis,
    OscillatorPair,
    _symplectic_moduli,
    normal_mode_basis,
    rotate_to_modes,
)

# Couplings below this threshold are treated as an exact decoupling, so the
# protected mode carries no dissipation at all rather than a spurious epsilon.
_DFS_SNAP = 1e-12

# Abort threshold for trajectories.  The equilibrium-matched diffusion is not
# completely positive, and cold, strongly squeezed starts transiently push the
# smallest symplectic eigenvalue a few 1e-3 under 1/2 before damping wins;
# anything past this bound signals a broken generator or step size instead.
_TRAJ_NU_TOL = 1e-2


class Topology(str, Enum):
    """Bath wiring: one bath driving x1 + x2, or one independent bath each."""

    COMMON = "common"
    SEPARATE = "separate"


class PhysicalityError(RuntimeError):
    """A trajectory sample left the physical state space.

    Signals a too-large step or an unphysical generator.
    """

    def __init__(self, time: float, nu_min: float):
        super().__init__(
            f"state at t = {time:.6g} has minimal symplectic eigenvalue "
            f"{nu_min:.12g} < 1/2 - {_TRAJ_NU_TOL:g}; reduce dt or check "
            "the generator"
        )
        self.time = time
        self.nu_min = nu_min


def _frozen(matrix) -> np.ndarray:
    out = np.array(matrix, dtype=float)
    out.flags.writeable = False
    return out


@dataclass(frozen=True)
class BathConfig:
    """Ohmic environment parameters, in units of omega1 (k_B = 1)."""

    topology: Topology
    gamma0: float
    temperature: float
    cutoff: float

    def __post_init__(self):
        object.__setattr__(self, "topology", Topology(self.topology))
        if not (math.isfinite(self.gamma0) and self.gamma0 > 0.0):
            raise ValueError("gamma0 must be positive and finite")
        if not (math.isfinite(self.temperature) and self.temperature >= 0.0):
            raise ValueError("temperature must be non-negative and finite")
        if not (math.isfinite(self.cutoff) and self.cutoff > 0.0):
            raise ValueError("cutoff must be positive and finite")


@dataclass(frozen=True)
class Generator:
    """Drift/diffusion pair of the linear moment equation dS/dt = AS + SA^T + D.

    ``drift`` and ``diffusion`` act in the bare basis.  When produced by
    :func:`build_generator` the normal-basis matrices, the 2x2 friction
    matrix and the construction inputs are retained for introspection;
    ``dfs_mode`` indexes a normal mode (0 = plus, 1 = minus) that carries
    exactly zero friction and diffusion.
    """

    drift: np.ndarray
    diffusion: np.ndarray
    dfs_mode: int | None = None
    normal_drift: np.ndarray | None = None
    normal_diffusion: np.ndarray | None = None
    friction: np.ndarray | None = None
    basis: NormalModeBasis | None = None
    pair: OscillatorPair | None = None
    bath: BathConfig | None = None

    def __post_init__(self):
        drift = np.asarray(self.drift, dtype=float)
        diff = np.asarray(self.diffusion, dtype=float)
        if drift.shape != (4, 4) or diff.shape != (4, 4):
            raise ValueError("drift and diffusion must be 4x4 matrices")
        if not (np.all(np.isfinite(drift)) and np.all(np.isfinite(diff))):
            raise ValueError("generator matrices must be finite")
        scale = float(np.max(np.abs(diff)))
        if scale > 0.0 and np.max(np.abs(diff - diff.T)) > 1e-10 * scale:
            raise ValueError("diffusion matrix must be symmetric")
        object.__setattr__(self, "drift", _frozen(drift))
        object.__setattr__(self, "diffusion", _frozen((diff + diff.T) / 2.0))
        for name in ("normal_drift", "normal_diffusion", "friction"):
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _frozen(value))
        if self.dfs_mode is not None:
            if self.dfs_mode not in (0, 1):
                raise ValueError("dfs_mode must be 0 or 1")
            self._check_dfs_rows()

    def _check_dfs_rows(self):
        # The protected mode must be exactly dissipation-free, not merely small.
        n = self.dfs_mode
        if self.friction is not None:
            if np.any(self.friction[n, :]) or np.any(self.friction[:, n]):
                raise ValueError("dfs mode must carry exactly zero friction")
        if self.normal_diffusion is not None:
            i = 2 * n
            if np.any(self.normal_diffusion[i : i + 2, :]) or np.any(
                self.normal_diffusion[:, i : i + 2]
            ):
                raise ValueError("dfs mode must carry exactly zero diffusion")


@dataclass(frozen=True)
class Trajectory:
    """Sampled covariance evolution: times plus one validated state each."""

    times: np.ndarray
    states: tuple[CovarianceState, ...]

    def __post_init__(self):
        times = np.asarray(self.times, dtype=float)
        if times.ndim != 1 or times.size != len(self.states):
            raise ValueError("times and states must have matching lengths")
        if times.size == 0:
            raise ValueError("trajectory must contain at least one sample")
        if times.size > 1 and not np.all(np.diff(times) > 0.0):
            raise ValueError("sample times must be strictly increasing")
        times = times.copy()
        times.flags.writeable = False
        object.__setattr__(self, "times", times)
        object.__setattr__(self, "states", tuple(self.states))

    def __len__(self) -> int:
        return len(self.states)

    @property
    def sigmas(self) -> np.ndarray:
        """All samples stacked into an (n, 4, 4) array."""
        return np.stack([s.sigma for s in self.states])


def _basis_transform(pair: OscillatorPair, basis: NormalModeBasis):
    """(M, M^-1) with u_normal = M u_bare for dimensionless quadratures."""
    m2 = basis.mode_matrix()
    rot = np.zeros((4, 4))
    rot[0::2, 0::2] = m2
    rot[1::2, 1::2] = m2
    scale_in = np.array(
        [
            pair.omega1 ** -0.5,
            pair.omega1 ** 0.5,
            pair.omega2 ** -0.5,
            pair.omega2 ** 0.5,
        ]
    )
    scale_out = np.array(
        [
            basis.omega_plus ** 0.5,
            basis.omega_plus ** -0.5,
            basis.omega_minus ** 0.5,
            basis.omega_minus ** -0.5,
        ]
    )
    # M = D_out R D_in; the rotation is its own inverse.
    m = scale_out[:, None] * rot * scale_in[None, :]
    m_inv = (1.0 / scale_in)[:, None] * rot * (1.0 / scale_out)[None, :]
    return m, m_inv


def build_generator(pair: OscillatorPair, bath: BathConfig) -> Generator:
    """Assemble drift and diffusion for a damped pair in the bare basis.

    In the normal basis each mode rotates at its own frequency; friction acts
    on momenta only with Gamma = gamma0 * outer(c, c) for the shared bath
    (c the coupling coefficients of x1 + x2) and Gamma = gamma0 * I for
    independent baths.  Momentum diffusion uses the symmetrized two-frequency
    thermal kernel across modes; each damped mode's own block additionally
    carries the exact equilibrium variances of a cutoff-Ohmic damped
    oscillator, which suppress the position spread below the free thermal
    value and enhance the momentum spread (an x-p diffusion term encodes the
    resulting asymmetry).  A mode decoupled from the shared bath keeps
    exactly zero friction and diffusion.
    """
    min_omega = min(pair.omega1, pair.omega2)
    if not bath.gamma0 < 0.1 * min_omega:
        raise ValueError(
            "weak coupling requires gamma0 < 0.1 * min(omega1, omega2)"
        )
    basis = normal_mode_basis(pair)
    if not bath.cutoff >= 5.0 * basis.omega_plus:
        raise ValueError("cutoff must satisfy cutoff >= 5 * omega_plus")

    dfs: int | None = None
    if bath.topology is Topology.COMMON:
        coupling = basis.coupling_vector()
        coupling[np.abs(coupling) < _DFS_SNAP] = 0.0
        friction = bath.gamma0 * np.outer(coupling, coupling)
        decoupled = np.flatnonzero(coupling == 0.0)
        if decoupled.size:
            dfs = int(decoupled[0])
    else:
        friction = bath.gamma0 * np.eye(2)

    omegas = (basis.omega_plus, basis.omega_minus)
    a_norm = np.zeros((4, 4))
    d_norm = np.zeros((4, 4))
    for n, omega in enumerate(omegas):
        a_norm[2 * n, 2 * n + 1] = omega
        a_norm[2 * n + 1, 2 * n] = -omega
    for n in range(2):
        for m in range(2):
            a_norm[2 * n + 1, 2 * m + 1] -= friction[n, m]

    temperature, cutoff = bath.temperature, bath.cutoff
    for n, omega in enumerate(omegas):
        eta = friction[n, n]
        if eta > 0.0:
            tau_x, tau_p = dressed_variances(omega, eta, cutoff, temperature)
            d_norm[2 * n + 1, 2 * n + 1] = 2.0 * eta * tau_p
            d_norm[2 * n, 2 * n + 1] = d_norm[2 * n + 1, 2 * n] = omega * (
                tau_x - tau_p
            )
    if friction[0, 1] != 0.0:
        cross = friction[0, 1] * (
            thermal_variance(omegas[0], temperature)
            + thermal_variance(omegas[1], temperature)
        )
        d_norm[1, 3] = d_norm[3, 1] = cross

    m, m_inv = _basis_transform(pair, basis)
    drift = m_inv @ a_norm @ m
    diffusion = m_inv @ d_norm @ m_inv.T
    return Generator(
        drift=drift,
        diffusion=(diffusion + diffusion.T) / 2.0,
        dfs_mode=dfs,
        normal_drift=a_norm,
        normal_diffusion=d_norm,
        friction=friction,
        basis=basis,
        pair=pair,
        bath=bath,
    )


def evolve(
    initial: CovarianceState,
    gen: Generator,
    t_end: float,
    dt: float,
    sample_stride: int = 1,
) -> Trajectory:
    """Fixed-step RK4 integration of dS/dt = AS + SA^T + D.

    The step count is the largest multiple of ``sample_stride`` fitting in
    ``t_end``, so every emitted sample sits exactly ``sample_stride`` steps
    after the previous one.  Every sample is checked against the physicality
    bound nu_min >= 1/2 - 1e-2 and the run aborts with a diagnostic on the
    first violation (the margin covers the transient slips of the
    non-completely-positive diffusion; see :class:`CovarianceState`).
    """
    if not (math.isfinite(t_end) and t_end > 0.0):
        raise ValueError("t_end must be positive and finite")
    if not (math.isfinite(dt) and dt > 0.0):
        raise ValueError("dt must be positive and finite")
    stride = int(sample_stride)
    if stride < 1:
        raise ValueError("sample_stride must be a positive integer")
    if gen.basis is not None:
        rate_scale = gen.basis.omega_plus
    else:
        rate_scale = float(np.max(np.abs(np.linalg.eigvals(gen.drift))))
    if rate_scale > 0.0 and dt > 0.01 / rate_scale * (1.0 + 1e-12):
        raise ValueError("dt too large for stability: need dt <= 0.01/omega_plus")

    n_steps = (int(math.floor(t_end / dt)) // stride) * stride
    n_samples = n_steps // stride
    if n_samples < 1:
        raise ValueError("t_end does not cover a single sample stride")

    sigmas = rk4_evolve(
        np.ascontiguousarray(gen.drift),
        np.ascontiguousarray(gen.diffusion),
        np.ascontiguousarray(initial.sigma),
        float(dt),
        n_samples,
        stride,
    )
    times = dt * stride * np.arange(n_samples + 1)
    for k in range(n_samples + 1):
        nu_min = float(_symplectic_moduli(sigmas[k])[0])
        if nu_min < 0.5 - _TRAJ_NU_TOL:
            raise PhysicalityError(float(times[k]), nu_min)
    states = tuple(
        CovarianceState(sigmas[k], nu_tol=_TRAJ_NU_TOL)
        for k in range(n_samples + 1)
    )
    return Trajectory(times=times, states=states)


# Upper-triangle index pairs of a symmetric 4x4 matrix, fixing the unknown
# ordering of the direct steady-state solve.
_TRIU = [(i, j) for i in range(4) for j in range(i, 4)]


def steady_state(gen: Generator) -> CovarianceState:
    """Unique fixed point of the moment equation, by direct linear solve.

    The equation AS + SA^T + D = 0 is linear in the 10 independent entries
    of S.  Requires every mode damped; a protected mode makes the system
    singular and the asymptotic construction must be used instead.
    """
    if gen.dfs_mode is not None:
        raise ValueError(
            "generator has an undamped normal mode: no unique steady state "
            "(use asymptotic_state)"
        )
    a, d = gen.drift, gen.diffusion
    lhs = np.zeros((10, 10))
    for col, (i, j) in enumerate(_TRIU):
        basis_mat = np.zeros((4, 4))
        basis_mat[i, j] = basis_mat[j, i] = 1.0
        image = a @ basis_mat + basis_mat @ a.T
        lhs[:, col] = [image[p, q] for p, q in _TRIU]
    rhs = -np.array([d[p, q] for p, q in _TRIU])
    try:
        solution = np.linalg.solve(lhs, rhs)
    except np.linalg.LinAlgError as exc:
        raise ValueError(
            "singular steady-state system: an undamped mode is present"
        ) from exc
    sigma = np.zeros((4, 4))
    for col, (i, j) in enumerate(_TRIU):
        sigma[i, j] = sigma[j, i] = solution[col]
    residual = a @ sigma + sigma @ a.T + d
    if np.max(np.abs(residual)) > 1e-8 * max(1.0, float(np.max(np.abs(sigma)))):
        raise ValueError("steady-state solve left a large residual")
    return CovarianceState(sigma)


def asymptotic_state(
    pair: OscillatorPair,
    bath: BathConfig,
    initial: CovarianceState,
    phase: float,
) -> CovarianceState:
    """Late-time state when the difference mode is protected.

    Requires the shared bath with identical uncoupled oscillators.  The sum
    mode relaxes to the equilibrium of a damped oscillator (position spread
    suppressed, momentum spread enhanced relative to the free thermal state);
    the difference mode keeps its initial second moments, carried around by
    free rotation through ``phase``; cross correlations between the two modes
    are dropped.
    """
    if bath.topology is not Topology.COMMON:
        raise ValueError("asymptotic construction requires the common topology")
    if not (pair.identical and pair.lam == 0.0):
        raise ValueError(
            "asymptotic construction requires identical uncoupled oscillators"
        )
    if not bath.gamma0 < 0.1 * pair.omega1:
        raise ValueError(
            "weak coupling requires gamma0 < 0.1 * min(omega1, omega2)"
        )
    if not bath.cutoff >= 5.0 * pair.omega1:
        raise ValueError("cutoff must satisfy cutoff >= 5 * omega_plus")

    basis = normal_mode_basis(pair)
    rotated = rotate_to_modes(initial, basis)
    minus = rotated.block(1, 1)
    angle = float(phase) % (2.0 * math.pi)
    cos_a, sin_a = math.cos(angle), math.sin(angle)
    free = np.array([[cos_a, sin_a], [-sin_a, cos_a]])
    minus = free @ minus @ free.T

    # The sum mode sees twice the single-oscillator coupling strength.
    tau_x, tau_p = dressed_variances(
        pair.omega1, 2.0 * bath.gamma0, bath.cutoff, bath.temperature
    )
    normal = np.zeros((4, 4))
    normal[0, 0] = tau_x
    normal[1, 1] = tau_p
    normal[2:, 2:] = minus

    m2 = basis.mode_matrix()
    rot = np.zeros((4, 4))
    rot[0::2, 0::2] = m2
    rot[1::2, 1::2] = m2
    sigma = rot @ normal @ rot.T
    return CovarianceState((sigma + sigma.T) / 2.0)
