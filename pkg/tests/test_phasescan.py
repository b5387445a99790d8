"""Tests for the asymptotic phase analysis over squeezing and temperature.

The scan is checked against oracles built in this file from first
principles:

* the phase-minimized twin variance has a closed form in the equilibrium
  variances of the damped sum mode and the squeezed difference mode —
  2 nbar+ nbar- - 2 |S+||S-| — which is evaluated here without touching
  the scan machinery;
* the entanglement verdict reduces to 2 tau_x < exp(2r);
* brute-force dense phase grids through the public state constructors
  bound the refined extrema from both sides;
* boundary temperatures are compared against scipy root finding on the
  closed forms.
"""

import dataclasses
import math

import numpy as np
import pytest
import scipy.optimize

from twinbath import (
    BathConfig,
    CovarianceState,
    OscillatorPair,
    PhaseDiagram,
    PhasePoint,
    asymptotic_entanglement_predicate,
    asymptotic_state,
    asymptotic_twin_predicate,
    dressed_variances,
    log_negativity,
    scan_boundaries,
    scan_phase_diagram,
    tms_state,
    twin_inequality_margin,
    twin_variance,
)

_GAMMA0 = 2e-2 / math.pi
_CUTOFF = 20.0
_PAIR = OscillatorPair()
_BATH = BathConfig(
    topology="common", gamma0=_GAMMA0, temperature=1.0, cutoff=_CUTOFF
)


def _sum_mode_variances(temperature: float) -> tuple[float, float]:
    # The sum mode of the shared bath carries twice the per-oscillator
    # coupling strength.
    return dressed_variances(1.0, 2.0 * _GAMMA0, _CUTOFF, temperature)


def _closed_min_twin(r: float, temperature: float) -> float:
    tau_x, tau_p = _sum_mode_variances(temperature)
    nbar_plus = 0.5 * (tau_x + tau_p - 1.0)
    s_plus = 0.5 * (tau_p - tau_x)
    nbar_minus = math.sinh(r) ** 2
    s_minus = math.sinh(r) * math.cosh(r)
    return 2.0 * nbar_plus * nbar_minus - 2.0 * s_plus * s_minus


def _closed_margin(r: float, temperature: float) -> float:
    tau_x, tau_p = _sum_mode_variances(temperature)
    return (tau_x + tau_p - 1.0) * math.tanh(r) - (tau_p - tau_x)


def _closed_entangled(r: float, temperature: float) -> bool:
    tau_x, _ = _sum_mode_variances(temperature)
    return 2.0 * tau_x < math.exp(2.0 * r)


@pytest.fixture(scope="module")
def medium_diagram() -> PhaseDiagram:
    t_grid = np.linspace(0.05, 1.2, 8)
    r_grid = np.array([0.0, 0.3, 2.0])
    return scan_phase_diagram(t_grid, r_grid, _PAIR, _BATH, workers=1)


# ---------------------------------------------------------------------------
# refined extrema against closed forms and brute force


def test_min_twin_matches_closed_form():
    for r in (0.3, 1.0, 2.0, 3.0):
        for temperature in (0.05, 0.35, 1.0, 2.0):
            _, min_d = asymptotic_twin_predicate(r, temperature, _PAIR, _BATH)
            expected = _closed_min_twin(r, temperature)
            assert min_d == pytest.approx(expected, abs=1e-9, rel=1e-9)


def test_min_twin_matches_dense_phase_grid():
    for r, temperature in ((1.5, 0.3), (0.7, 0.8)):
        _, min_d = asymptotic_twin_predicate(r, temperature, _PAIR, _BATH)
        bath = dataclasses.replace(_BATH, temperature=temperature)
        initial = tms_state(r)
        values = [
            twin_variance(asymptotic_state(_PAIR, bath, initial, phase))
            for phase in np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
        ]
        # The refined value can only undercut a finite grid, and not by
        # more than the grid resolution allows.
        assert min_d <= min(values) + 1e-9
        assert min_d == pytest.approx(min(values), abs=1e-4)


def test_max_entanglement_matches_dense_phase_grid():
    for r, temperature in ((1.5, 0.3), (0.7, 0.8)):
        _, best = asymptotic_entanglement_predicate(r, temperature, _PAIR, _BATH)
        bath = dataclasses.replace(_BATH, temperature=temperature)
        initial = tms_state(r)
        values = [
            log_negativity(asymptotic_state(_PAIR, bath, initial, phase))
            for phase in np.linspace(0.0, 2.0 * math.pi, 1024, endpoint=False)
        ]
        assert best >= max(values) - 1e-9
        assert best == pytest.approx(max(values), abs=1e-4)


def test_entanglement_verdict_matches_closed_form():
    # Points chosen safely away from the threshold 2 tau_x = exp(2r).
    for r, temperature in (
        (0.3, 0.5),
        (0.3, 1.1),
        (1.0, 0.1),
        (1.0, 2.0),
        (0.05, 0.8),
    ):
        verdict, _ = asymptotic_entanglement_predicate(
            r, temperature, _PAIR, _BATH
        )
        assert verdict == _closed_entangled(r, temperature)


def test_margin_identity():
    # min_d = sinh(2r) * margin / 2 exactly, linking the scanned extremum
    # to the reported inequality margin.
    for r in (0.2, 1.0, 2.5):
        for temperature in (0.05, 0.5, 1.5):
            margin = twin_inequality_margin(r, temperature, _PAIR, _BATH)
            _, min_d = asymptotic_twin_predicate(r, temperature, _PAIR, _BATH)
            assert min_d == pytest.approx(
                0.5 * math.sinh(2.0 * r) * margin, abs=1e-9
            )
            assert margin == pytest.approx(
                _closed_margin(r, temperature), abs=1e-12
            )


def test_margin_sign_decides_twin_verdict():
    for r in (0.2, 1.0, 2.5):
        for temperature in (0.05, 0.5, 1.5):
            margin = twin_inequality_margin(r, temperature, _PAIR, _BATH)
            twin, _ = asymptotic_twin_predicate(r, temperature, _PAIR, _BATH)
            assert abs(margin) > 1e-6  # sample points sit off the boundary
            assert twin == (margin < 0.0)


# ---------------------------------------------------------------------------
# verdicts at reference points


def test_reference_verdicts():
    # Without initial squeezing the difference mode is phase-invariant and
    # the minimized twin variance vanishes identically.
    twin, min_d = asymptotic_twin_predicate(0.0, 0.5, _PAIR, _BATH)
    assert not twin
    assert abs(min_d) < 1e-9

    assert not asymptotic_twin_predicate(2.0, 1.0, _PAIR, _BATH)[0]
    assert asymptotic_twin_predicate(2.0, 0.1, _PAIR, _BATH)[0]
    assert asymptotic_entanglement_predicate(2.0, 1.0, _PAIR, _BATH)[0]
    assert not asymptotic_entanglement_predicate(0.0, 5.0, _PAIR, _BATH)[0]
    assert asymptotic_entanglement_predicate(0.5, 0.01, _PAIR, _BATH)[0]


def test_cold_unsqueezed_residual_entanglement():
    # At very low temperature the equilibrated sum mode has its position
    # spread squeezed below vacuum (tau_x < 1/2), which is itself a weak
    # entanglement resource: the verdict at r = 0 is positive even though
    # no squeezing was injected.  This follows directly from the closed
    # form 2 tau_x < 1 and is pinned here as intended behavior.
    verdict, best = asymptotic_entanglement_predicate(0.0, 0.01, _PAIR, _BATH)
    assert _closed_entangled(0.0, 0.01)
    assert verdict
    assert 0.0 < best < 0.01


def test_predicate_input_validation():
    for bad_r, bad_t in ((-0.1, 0.5), (math.nan, 0.5), (1.0, -0.2), (1.0, math.nan)):
        with pytest.raises(ValueError):
            asymptotic_twin_predicate(bad_r, bad_t, _PAIR, _BATH)
        with pytest.raises(ValueError):
            asymptotic_entanglement_predicate(bad_r, bad_t, _PAIR, _BATH)


def test_preparation_equivalence_tms_vs_product_squeezed():
    # A two-mode squeezed input and a pair of oppositely squeezed product
    # inputs endow the protected difference mode with the same second
    # moments, so the late-time analysis cannot tell them apart.
    r = 1.3
    product = CovarianceState(
        np.diag(
            [
                math.exp(-2.0 * r),
                math.exp(2.0 * r),
                math.exp(-2.0 * r),
                math.exp(2.0 * r),
            ]
        )
        / 2.0
    )
    bath = dataclasses.replace(_BATH, temperature=0.3)
    for phase in (0.0, 0.9, 2.4):
        from_tms = asymptotic_state(_PAIR, bath, tms_state(r), phase)
        from_product = asymptotic_state(_PAIR, bath, product, phase)
        np.testing.assert_allclose(
            from_tms.sigma, from_product.sigma, atol=1e-12
        )


# ---------------------------------------------------------------------------
# grid scans


def test_scan_grid_structure():
    t_grid = [0.1, 0.4, 0.9]
    r_grid = [0.0, 0.8, 1.6, 2.4]
    diagram = scan_phase_diagram(t_grid, r_grid, _PAIR, _BATH)
    assert diagram.t_grid.shape == (3,)
    assert diagram.r_grid.shape == (4,)
    assert len(diagram.points) == 3
    for i, t in enumerate(t_grid):
        row = diagram.points[i]
        assert len(row) == 4
        for j, r in enumerate(r_grid):
            point = row[j]
            assert point.temperature == t
            assert point.squeezing == r
            _, min_d = asymptotic_twin_predicate(r, t, _PAIR, _BATH)
            assert point.min_d == min_d


def test_scan_workers_deterministic():
    t_grid = [0.2, 0.6, 1.0]
    r_grid = [0.0, 1.0, 2.0]
    serial = scan_phase_diagram(t_grid, r_grid, _PAIR, _BATH, workers=1)
    parallel = scan_phase_diagram(t_grid, r_grid, _PAIR, _BATH, workers=2)
    for row_s, row_p in zip(serial.points, parallel.points):
        for a, b in zip(row_s, row_p):
            assert a.min_d == b.min_d
            assert a.asymptotic_EN == b.asymptotic_EN
            assert a.twin == b.twin
            assert a.entangled == b.entangled


def test_scan_rejects_bad_regime():
    separate = dataclasses.replace(_BATH, topology="separate")
    with pytest.raises(ValueError, match="common"):
        scan_phase_diagram([0.1, 0.2], [0.0, 1.0], _PAIR, separate)
    with pytest.raises(ValueError, match="identical"):
        scan_phase_diagram(
            [0.1, 0.2], [0.0, 1.0], OscillatorPair(omega2=1.2), _BATH
        )
    with pytest.raises(ValueError, match="identical"):
        scan_phase_diagram(
            [0.1, 0.2], [0.0, 1.0], OscillatorPair(lam=0.3), _BATH
        )
    with pytest.raises(ValueError, match="non-negative"):
        scan_phase_diagram([-0.1, 0.2], [0.0, 1.0], _PAIR, _BATH)
    with pytest.raises(ValueError, match="strictly increasing"):
        scan_phase_diagram([0.2, 0.1], [0.0, 1.0], _PAIR, _BATH)


def test_phase_point_validation():
    with pytest.raises(ValueError):
        PhasePoint(
            temperature=0.5,
            squeezing=1.0,
            entangled=True,
            twin=True,
            min_d=1.0,  # positive value cannot carry a twin verdict
            asymptotic_EN=1.0,
        )
    with pytest.raises(ValueError):
        PhasePoint(
            temperature=0.5,
            squeezing=1.0,
            entangled=False,
            twin=False,
            min_d=1.0,
            asymptotic_EN=1.0,  # positive value must flag entanglement
        )


def test_phase_diagram_validation():
    point = PhasePoint(
        temperature=0.5,
        squeezing=1.0,
        entangled=False,
        twin=False,
        min_d=1.0,
        asymptotic_EN=0.0,
    )
    with pytest.raises(ValueError, match="strictly increasing"):
        PhaseDiagram(t_grid=[0.5, 0.5], r_grid=[1.0], points=((point,), (point,)))
    with pytest.raises(ValueError):
        PhaseDiagram(t_grid=[0.5], r_grid=[1.0, 2.0], points=((point,),))


# ---------------------------------------------------------------------------
# boundaries


def test_boundaries_match_closed_form_roots(medium_diagram):
    rows = scan_boundaries(medium_diagram, _PAIR, _BATH)
    by_r = {row.squeezing: row for row in rows}

    # r = 0.3 brackets both transitions inside the grid.
    row = by_r[0.3]
    t_twin_closed = scipy.optimize.brentq(
        lambda t: _closed_margin(0.3, t), 0.05, 1.2, xtol=1e-10
    )
    tau_gap = lambda t: 2.0 * _sum_mode_variances(t)[0] - math.exp(0.6)
    t_ent_closed = scipy.optimize.brentq(tau_gap, 0.05, 1.2, xtol=1e-10)
    assert row.t_twin == pytest.approx(t_twin_closed, abs=2e-3)
    assert row.t_entangled == pytest.approx(t_ent_closed, abs=2e-3)
    # The twin region is the smaller one at this squeezing.
    assert row.t_twin <= row.t_entangled


def test_boundary_none_when_unbracketed(medium_diagram):
    rows = scan_boundaries(medium_diagram, _PAIR, _BATH)
    by_r = {row.squeezing: row for row in rows}
    # Without squeezing the twin verdict never fires: no boundary.
    assert by_r[0.0].t_twin is None
    # At r = 2 entanglement survives the whole grid: no boundary either.
    assert by_r[2.0].t_entangled is None
    # But the twin transition at r = 2 is bracketed and lands where the
    # closed form puts it.
    t_twin_closed = scipy.optimize.brentq(
        lambda t: _closed_margin(2.0, t), 0.05, 1.2, xtol=1e-10
    )
    assert by_r[2.0].t_twin == pytest.approx(t_twin_closed, abs=2e-3)


def test_twin_columns_are_downward_closed(medium_diagram):
    # Raising the temperature at fixed squeezing can only destroy the twin
    # property, never restore it.
    for j in range(medium_diagram.r_grid.size):
        flags = [
            medium_diagram.points[i][j].twin
            for i in range(medium_diagram.t_grid.size)
        ]
        assert flags == sorted(flags, reverse=True)


def test_containment_exception_near_zero_squeezing():
    # Twin statistics normally imply entanglement, but the two regions
    # touch differently as r -> 0: the twin inequality is controlled by
    # tanh r while the entanglement threshold jumps, leaving a sliver at
    # small r and moderate temperature where the twin verdict outlives the
    # entanglement verdict.  This test pins the sliver to its closed-form
    # prediction instead of papering over it.
    t_grid = np.linspace(0.30, 0.45, 7)
    r_grid = np.array([0.03, 0.0508, 0.08])
    diagram = scan_phase_diagram(t_grid, r_grid, _PAIR, _BATH)
    observed = set()
    predicted = set()
    for i, t in enumerate(t_grid):
        for j, r in enumerate(r_grid):
            point = diagram.points[i][j]
            assert point.twin == (_closed_min_twin(r, t) < -1e-9)
            assert point.entangled == _closed_entangled(r, t)
            if point.twin and not point.entangled:
                observed.add((i, j))
            if _closed_min_twin(r, t) < -1e-9 and not _closed_entangled(r, t):
                predicted.add((i, j))
    assert observed == predicted
    assert observed  # the sliver is real on this grid
