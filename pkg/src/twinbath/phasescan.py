"""Asymptotic phase analysis over squeezing and temperature.

Twin correlations are evaluated on the late-time state and minimized over
the free-mode phase; asymptotic entanglement is maximized over the same
phase.  Grid sweeps treat every point independently and may run on several
processes; boundaries are extracted per squeezing value by bisection in
temperature.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .dynamics import BathConfig, Topology, asymptotic_state
from .equilibrium import dressed_variances
from .quantifiers import log_negativity, twin_variance
from .states import SYMPLECTIC_FORM, OscillatorPair, tms_state

_COARSE_POINTS = 720
_PHASE_TOL = 1e-6
# Boolean thresholds keeping machine noise out of the phase diagram.
_TWIN_THRESHOLD = -1e-9
_EN_THRESHOLD = 1e-9
_BOUNDARY_TOL = 1e-3
_INVPHI = (math.sqrt(5.0) - 1.0) / 2.0


@dataclass(frozen=True)
class PhasePoint:
    """Asymptotic verdict at one (temperature, squeezing) cell."""

    temperature: float
    squeezing: float
    entangled: bool
    twin: bool
    min_d: float
    asymptotic_EN: float

    def __post_init__(self):
        if self.twin != (self.min_d < _TWIN_THRESHOLD):
            raise ValueError("twin flag inconsistent with min_d")
        if self.entangled != (self.asymptotic_EN > _EN_THRESHOLD):
            raise ValueError("entangled flag inconsistent with asymptotic_EN")


@dataclass(frozen=True)
class PhaseDiagram:
    """Temperatures by squeezings, with one PhasePoint per cell."""

    t_grid: np.ndarray
    r_grid: np.ndarray
    points: tuple[tuple[PhasePoint, ...], ...]

    def __post_init__(self):
        t_grid = _validated_grid(self.t_grid, "t_grid")
        r_grid = _validated_grid(self.r_grid, "r_grid")
        points = tuple(tuple(row) for row in self.points)
        if len(points) != t_grid.size or any(
            len(row) != r_grid.size for row in points
        ):
            raise ValueError("points matrix does not match the grids")
        object.__setattr__(self, "t_grid", t_grid)
        object.__setattr__(self, "r_grid", r_grid)
        object.__setattr__(self, "points", points)


@dataclass(frozen=True)
class BoundaryRow:
    """Critical temperatures along one squeezing value; None if unbracketed."""

    squeezing: float
    t_entangled: float | None
    t_twin: float | None


def _validated_grid(values, name: str) -> np.ndarray:
    grid = np.asarray(values, dtype=float)
    if grid.ndim != 1 or grid.size == 0 or not np.all(np.isfinite(grid)):
        raise ValueError(f"{name} must be a non-empty finite 1-d grid")
    if grid.size > 1 and not np.all(np.diff(grid) > 0.0):
        raise ValueError(f"{name} must be strictly increasing")
    grid = grid.copy()
    grid.flags.writeable = False
    return grid


def _require_regime(pair: OscillatorPair, bath: BathConfig):
    if (
        bath.topology is not Topology.COMMON
        or not pair.identical
        or pair.lam != 0.0
    ):
        raise ValueError(
            "phase analysis requires identical uncoupled oscillators "
            "in a common bath"
        )


def _check_scalars(r: float, temperature: float):
    if not (math.isfinite(r) and r >= 0.0):
        raise ValueError("squeezing must be non-negative and finite")
    if not (math.isfinite(temperature) and temperature >= 0.0):
        raise ValueError("temperature must be non-negative and finite")


def _phase_sigmas(
    r: float, pair: OscillatorPair, bath: BathConfig
) -> tuple[np.ndarray, np.ndarray]:
    """Late-time covariances on the coarse phase grid, batched.

    Mirrors the asymptotic-state construction arithmetic so the coarse scan
    and the refined single-phase pathway agree to rounding.
    """
    phases = np.arange(_COARSE_POINTS) * (2.0 * math.pi / _COARSE_POINTS)
    tau_x, tau_p = dressed_variances(
        pair.omega1, 2.0 * bath.gamma0, bath.cutoff, bath.temperature
    )
    half_exp = 0.5 * math.exp(-2.0 * r)
    minus0 = np.array([[half_exp, 0.0], [0.0, 0.25 / half_exp]])
    cos_p, sin_p = np.cos(phases), np.sin(phases)
    rot = np.empty((_COARSE_POINTS, 2, 2))
    rot[:, 0, 0] = cos_p
    rot[:, 0, 1] = sin_p
    rot[:, 1, 0] = -sin_p
    rot[:, 1, 1] = cos_p
    minus = rot @ minus0 @ rot.transpose(0, 2, 1)
    normal = np.zeros((_COARSE_POINTS, 4, 4))
    normal[:, 0, 0] = tau_x
    normal[:, 1, 1] = tau_p
    normal[:, 2:, 2:] = minus
    mix = np.zeros((4, 4))
    s2 = math.sqrt(0.5)
    mix[0::2, 0::2] = [[s2, s2], [s2, -s2]]
    mix[1::2, 1::2] = [[s2, s2], [s2, -s2]]
    sigmas = mix @ normal @ mix.T
    return phases, sigmas


def _batched_twin(sigmas: np.ndarray) -> np.ndarray:
    """Wick twin variance on a stack of covariance matrices."""
    s = sigmas
    n1 = (s[:, 0, 0] + s[:, 1, 1] - 1.0) / 2.0
    n2 = (s[:, 2, 2] + s[:, 3, 3] - 1.0) / 2.0
    sq1 = ((s[:, 0, 0] - s[:, 1, 1]) ** 2 + 4.0 * s[:, 0, 1] ** 2) / 4.0
    sq2 = ((s[:, 2, 2] - s[:, 3, 3]) ** 2 + 4.0 * s[:, 2, 3] ** 2) / 4.0
    both = ((s[:, 0, 2] - s[:, 1, 3]) ** 2 + (s[:, 0, 3] + s[:, 1, 2]) ** 2) / 4.0
    hop = ((s[:, 0, 2] + s[:, 1, 3]) ** 2 + (s[:, 0, 3] - s[:, 1, 2]) ** 2) / 4.0
    return n1 * n1 + n2 * n2 + sq1 + sq2 - 2.0 * both - 2.0 * hop


def _batched_log_negativity(sigmas: np.ndarray) -> np.ndarray:
    """Log-negativity on a stack of covariance matrices."""
    signs = np.array([1.0, 1.0, 1.0, -1.0])
    tilde = sigmas * signs[:, None] * signs[None, :]
    chol = np.linalg.cholesky(tilde)
    kern = chol.transpose(0, 2, 1) @ SYMPLECTIC_FORM @ chol
    nu_min = np.linalg.svd(kern, compute_uv=False)[:, -1]
    return np.maximum(0.0, -np.log2(2.0 * nu_min))


def _golden_min(func, lo: float, hi: float, tol: float) -> tuple[float, float]:
    """Deterministic golden-section minimum; ties collapse to smaller phase."""
    left = hi - _INVPHI * (hi - lo)
    right = lo + _INVPHI * (hi - lo)
    f_left, f_right = func(left), func(right)
    while (hi - lo) > tol:
        if f_left <= f_right:
            hi, right, f_right = right, left, f_left
            left = hi - _INVPHI * (hi - lo)
            f_left = func(left)
        else:
            lo, left, f_left = left, right, f_right
            right = lo + _INVPHI * (hi - lo)
            f_right = func(right)
    best = 0.5 * (lo + hi)
    return best, func(best)


def twin_inequality_margin(
    r: float, temperature: float, pair: OscillatorPair, bath: BathConfig
) -> float:
    """Closed-form side of the twin criterion; negative exactly when twin.

    With the sum-mode equilibrium spreads tau_x and tau_p, the phase-minimized
    twin variance equals sinh(2r)/2 times this margin, so its sign must agree
    with the scanned minimum:

        margin = (tau_x + tau_p - 1) * tanh(r) - (tau_p - tau_x).
    """
    _require_regime(pair, bath)
    _check_scalars(r, temperature)
    tau_x, tau_p = dressed_variances(
        pair.omega1, 2.0 * bath.gamma0, bath.cutoff, temperature
    )
    return (tau_x + tau_p - 1.0) * math.tanh(r) - (tau_p - tau_x)


def _refined_extremum(
    r: float,
    pair: OscillatorPair,
    bath: BathConfig,
    maximize_entanglement: bool,
) -> float:
    """Extremize one indicator over the free-mode phase.

    Coarse scan on the batched covariances, then golden-section refinement of
    the winning bracket through the plain single-phase pathway.
    """
    phases, sigmas = _phase_sigmas(r, pair, bath)
    if maximize_entanglement:
        coarse = -_batched_log_negativity(sigmas)
    else:
        coarse = _batched_twin(sigmas)
    k = int(np.argmin(coarse))
    step = 2.0 * math.pi / _COARSE_POINTS
    lo, hi = phases[k] - step, phases[k] + step

    initial = tms_state(r)

    def objective(phase: float) -> float:
        state = asymptotic_state(pair, bath, initial, phase)
        if maximize_entanglement:
            return -log_negativity(state)
        return twin_variance(state)

    _, value = _golden_min(objective, lo, hi, _PHASE_TOL)
    return -value if maximize_entanglement else value


def asymptotic_twin_predicate(
    r: float, temperature: float, pair: OscillatorPair, bath: BathConfig
) -> tuple[bool, float]:
    """(twin, min_d): twin variance minimized over the free-mode phase."""
    _require_regime(pair, bath)
    _check_scalars(r, temperature)
    bath_t = replace(bath, temperature=temperature)
    min_d = _refined_extremum(r, pair, bath_t, maximize_entanglement=False)
    return min_d < _TWIN_THRESHOLD, min_d


def asymptotic_entanglement_predicate(
    r: float, temperature: float, pair: OscillatorPair, bath: BathConfig
) -> tuple[bool, float]:
    """(entangled, EN): log-negativity maximized over the free-mode phase."""
    _require_regime(pair, bath)
    _check_scalars(r, temperature)
    bath_t = replace(bath, temperature=temperature)
    best = _refined_extremum(r, pair, bath_t, maximize_entanglement=True)
    return best > _EN_THRESHOLD, best


def _scan_point(
    r: float, temperature: float, pair: OscillatorPair, bath: BathConfig
) -> PhasePoint:
    twin, min_d = asymptotic_twin_predicate(r, temperature, pair, bath)
    entangled, best_en = asymptotic_entanglement_predicate(
        r, temperature, pair, bath
    )
    return PhasePoint(
        temperature=temperature,
        squeezing=r,
        entangled=entangled,
        twin=twin,
        min_d=min_d,
        asymptotic_EN=best_en,
    )


def _scan_row(args) -> tuple[PhasePoint, ...]:
    temperature, r_values, pair, bath = args
    return tuple(_scan_point(r, temperature, pair, bath) for r in r_values)


def scan_phase_diagram(
    t_grid,
    r_grid,
    pair: OscillatorPair,
    bath: BathConfig,
    workers: int | None = None,
) -> PhaseDiagram:
    """Evaluate both predicates on the full grid.

    Rows (fixed temperature) are independent; with ``workers`` > 1 they are
    distributed over processes.  Assembly order is fixed by grid indices, so
    the result does not depend on scheduling.
    """
    _require_regime(pair, bath)
    t_arr = _validated_grid(t_grid, "t_grid")
    r_arr = _validated_grid(r_grid, "r_grid")
    if np.any(t_arr < 0.0) or np.any(r_arr < 0.0):
        raise ValueError("grids must be non-negative")
    tasks = [
        (float(t), tuple(float(r) for r in r_arr), pair, bath) for t in t_arr
    ]
    if workers is not None and int(workers) > 1:
        with ProcessPoolExecutor(max_workers=int(workers)) as pool:
            rows = list(pool.map(_scan_row, tasks))
    else:
        rows = [_scan_row(task) for task in tasks]
    return PhaseDiagram(t_grid=t_arr, r_grid=r_arr, points=tuple(rows))


def _bisect_boundary(
    predicate, r: float, t_low: float, t_high: float
) -> float:
    """Temperature where the predicate flips, given pred(t_low) is true."""
    while (t_high - t_low) > _BOUNDARY_TOL:
        mid = 0.5 * (t_low + t_high)
        if predicate(r, mid):
            t_low = mid
        else:
            t_high = mid
    return 0.5 * (t_low + t_high)


def scan_boundaries(
    diagram: PhaseDiagram, pair: OscillatorPair, bath: BathConfig
) -> tuple[BoundaryRow, ...]:
    """Critical temperatures per squeezing value, refined by bisection.

    A boundary is reported only when the grid brackets it: the column must
    contain both verdicts.  Columns that never change verdict yield None.
    """
    _require_regime(pair, bath)

    def entangled_at(r: float, temperature: float) -> bool:
        return asymptotic_entanglement_predicate(r, temperature, pair, bath)[0]

    def twin_at(r: float, temperature: float) -> bool:
        return asymptotic_twin_predicate(r, temperature, pair, bath)[0]

    rows = []
    t_grid = diagram.t_grid
    for j, r in enumerate(diagram.r_grid):
        column = [diagram.points[i][j] for i in range(t_grid.size)]
        bounds: dict[str, float | None] = {}
        for key, flags, predicate in (
            ("ent", [p.entangled for p in column], entangled_at),
            ("twin", [p.twin for p in column], twin_at),
        ):
            true_idx = [i for i, flag in enumerate(flags) if flag]
            false_idx = [i for i, flag in enumerate(flags) if not flag]
            if not true_idx or not false_idx:
                bounds[key] = None
                continue
            t_low = float(t_grid[max(true_idx)])
            t_high = float(t_grid[min(false_idx)])
            if t_high < t_low:
                # Re-entrant column: no single critical temperature.
                bounds[key] = None
                continue
            bounds[key] = _bisect_boundary(predicate, float(r), t_low, t_high)
        rows.append(
            BoundaryRow(
                squeezing=float(r),
                t_entangled=bounds["ent"],
                t_twin=bounds["twin"],
            )
        )
    return tuple(rows)
