"""State container, symplectic spectra, and normal-mode geometry."""

import math

import numpy as np
import pytest

from twinbath import (
    CovarianceState,
    OscillatorPair,
    normal_mode_basis,
    rotate_to_modes,
    symplectic_eigenvalues,
    thermal_state,
    tms_state,
    vacuum_state,
)


def _random_physical_sigma(rng) -> np.ndarray:
    # G G^T + I dominates the vacuum, so every draw is a valid state.
    g = rng.normal(size=(4, 4))
    return g @ g.T + np.eye(4)


def test_vacuum_eigenvalues():
    nu = symplectic_eigenvalues(vacuum_state())
    assert nu == pytest.approx((0.5, 0.5), abs=1e-12)


def test_thermal_eigenvalues():
    nu = symplectic_eigenvalues(thermal_state(0.7, 1.3))
    assert nu == pytest.approx((1.2, 1.8), abs=1e-12)


@pytest.mark.parametrize("r", [0.0, 0.5, 1.0, 2.0, 3.0])
def test_tms_purity(r):
    nu_minus, nu_plus = symplectic_eigenvalues(tms_state(r))
    assert abs(nu_minus - 0.5) < 1e-10
    assert abs(nu_plus - 0.5) < 1e-10


def test_tms_matrix_entries():
    state = tms_state(1.0)
    c, s = math.cosh(2.0) / 2.0, math.sinh(2.0) / 2.0
    expected = np.array(
        [
            [c, 0.0, s, 0.0],
            [0.0, c, 0.0, -s],
            [s, 0.0, c, 0.0],
            [0.0, -s, 0.0, c],
        ]
    )
    np.testing.assert_allclose(state.sigma, expected, atol=1e-12)


def test_tms_normal_mode_variances():
    """The pi/4 rotation diagonalizes a TMS state into two squeezed modes."""
    basis = normal_mode_basis(OscillatorPair(1.0, 1.0, 0.0))
    rotated = rotate_to_modes(tms_state(1.0), basis).sigma
    diag = np.array(
        [
            math.exp(2.0) / 2.0,
            math.exp(-2.0) / 2.0,
            math.exp(-2.0) / 2.0,
            math.exp(2.0) / 2.0,
        ]
    )
    np.testing.assert_allclose(rotated, np.diag(diag), atol=1e-12)


def test_det_product_rule():
    rng = np.random.default_rng(11)
    for _ in range(100):
        state = CovarianceState(_random_physical_sigma(rng))
        nu_minus, nu_plus = symplectic_eigenvalues(state)
        det = np.linalg.det(state.sigma)
        assert det == pytest.approx((nu_minus * nu_plus) ** 2, rel=1e-10)


def test_spectrum_invariant_under_rotation():
    rng = np.random.default_rng(12)
    basis = normal_mode_basis(OscillatorPair(1.0, 1.0, 0.0))
    for _ in range(100):
        state = CovarianceState(_random_physical_sigma(rng))
        before = symplectic_eigenvalues(state)
        after = symplectic_eigenvalues(rotate_to_modes(state, basis))
        assert before == pytest.approx(after, abs=1e-10)


def test_rotation_is_involution():
    rng = np.random.default_rng(13)
    basis = normal_mode_basis(OscillatorPair(1.0, 1.0, 0.0))
    state = CovarianceState(_random_physical_sigma(rng))
    twice = rotate_to_modes(rotate_to_modes(state, basis), basis)
    np.testing.assert_allclose(twice.sigma, state.sigma, atol=1e-12)


def test_vacuum_rotation_invariant():
    basis = normal_mode_basis(OscillatorPair(1.0, 1.2, 0.3))
    rotated = rotate_to_modes(vacuum_state(), basis)
    np.testing.assert_allclose(rotated.sigma, np.eye(4) / 2.0, atol=1e-12)


def test_basis_degenerate():
    basis = normal_mode_basis(OscillatorPair(1.0, 1.0, 0.0))
    assert basis.theta == pytest.approx(math.pi / 4.0, abs=1e-12)
    assert basis.omega_plus == pytest.approx(1.0, abs=1e-12)
    assert basis.omega_minus == pytest.approx(1.0, abs=1e-12)


def test_basis_coupled():
    basis = normal_mode_basis(OscillatorPair(1.0, 1.0, 0.2))
    assert basis.omega_plus == pytest.approx(math.sqrt(1.2), abs=1e-12)
    assert basis.omega_minus == pytest.approx(math.sqrt(0.8), abs=1e-12)
    assert basis.theta == pytest.approx(math.pi / 4.0, abs=1e-12)


def test_basis_detuned():
    basis = normal_mode_basis(OscillatorPair(1.0, 1.2, 0.0))
    assert basis.theta == pytest.approx(0.0, abs=1e-12)
    assert basis.omega_plus == pytest.approx(1.2, abs=1e-12)
    assert basis.omega_minus == pytest.approx(1.0, abs=1e-12)


def test_basis_matches_stiffness_eigendecomposition():
    pair = OscillatorPair(1.0, 1.3, 0.4)
    basis = normal_mode_basis(pair)
    stiffness = np.array(
        [[pair.omega1**2, pair.lam], [pair.lam, pair.omega2**2]]
    )
    freqs = np.sqrt(np.sort(np.linalg.eigvalsh(stiffness)))
    assert basis.omega_minus == pytest.approx(freqs[0], abs=1e-12)
    assert basis.omega_plus == pytest.approx(freqs[1], abs=1e-12)


def test_unstable_pair_rejected():
    with pytest.raises(ValueError, match="lambda\\^2 < omega1\\^2"):
        OscillatorPair(1.0, 1.0, 1.5)


@pytest.mark.parametrize(
    "sigma",
    [
        np.eye(3),
        np.diag([1.0, 1.0, 1.0, -1.0]),
        np.array([[1, 0.5, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1.0]]),
        np.full((4, 4), np.nan),
    ],
)
def test_invalid_sigma_rejected(sigma):
    with pytest.raises(ValueError):
        CovarianceState(sigma)


def test_heisenberg_violation_rejected():
    with pytest.raises(ValueError, match="symplectic"):
        CovarianceState(np.eye(4) * 0.4)


def test_nu_tol_admits_marginal_states():
    sigma = np.eye(4) * 0.4955
    with pytest.raises(ValueError):
        CovarianceState(sigma)
    state = CovarianceState(sigma, nu_tol=1e-2)
    assert symplectic_eigenvalues(state)[0] == pytest.approx(0.4955, abs=1e-12)


@pytest.mark.parametrize("tol", [-1e-3, 0.06])
def test_nu_tol_bounds(tol):
    with pytest.raises(ValueError):
        CovarianceState(np.eye(4), nu_tol=tol)


def test_sigma_read_only():
    state = vacuum_state()
    with pytest.raises(ValueError):
        state.sigma[0, 0] = 2.0
