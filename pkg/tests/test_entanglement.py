import math

import numpy as np
import pytest

from trimirror.dynamics import TimeGrid
from trimirror.entanglement import (
    chevron_scan,
    detuned_mirror_params,
    detuned_rabi_profile,
    log_negativity,
    partial_trace,
    partial_transpose,
    population_amplitude_scan,
)
from trimirror.fock import ModeDims, basis_state
from trimirror.model import SystemParams

G = 0.05
G_EFF = 2 * math.sqrt(2) * G * G  # two-photon pair-exchange coupling


def random_density(rng, d):
    A = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
    rho = A @ A.conj().T
    return rho / np.trace(rho)


def noon_state(d=3):
    """(|2,0> + |0,2>)/sqrt(2) on two d-level modes."""
    psi = np.zeros(d * d, dtype=complex)
    psi[2 * d + 0] = 1 / math.sqrt(2)
    psi[0 * d + 2] = 1 / math.sqrt(2)
    return np.outer(psi, psi.conj())


class TestPartialTrace:
    def test_product_state_factors(self):
        rng = np.random.default_rng(1)
        ra, rb, rc = (random_density(rng, d) for d in (3, 4, 3))
        rho = np.kron(np.kron(ra, rb), rc)
        reduced = partial_trace(rho, (3, 4, 3), keep=(0, 2))
        np.testing.assert_allclose(reduced, np.kron(ra, rc), atol=1e-13)
        assert np.trace(reduced) == pytest.approx(1.0)

    def test_pure_noon_stays_pure_after_tracing_vacuum_mirror(self):
        dims = ModeDims((3, 3, 3))
        psi = (basis_state((2, 0, 0), dims) + basis_state((0, 0, 2), dims)) / math.sqrt(2)
        rho = np.outer(psi, psi.conj())
        reduced = partial_trace(rho, dims, keep=(0, 2))
        purity = np.trace(reduced @ reduced).real
        assert purity == pytest.approx(1.0, abs=1e-12)

    def test_positivity_and_trace_preserved(self):
        rng = np.random.default_rng(2)
        rho = random_density(rng, 2 * 3 * 2)
        reduced = partial_trace(rho, (2, 3, 2), keep=(1,))
        assert np.trace(reduced).real == pytest.approx(1.0, abs=1e-12)
        assert np.linalg.eigvalsh(reduced).min() > -1e-10

    def test_empty_keep_rejected(self):
        with pytest.raises(ValueError):
            partial_trace(np.eye(4) / 4, (2, 2), keep=())


class TestPartialTranspose:
    def test_involution(self):
        rng = np.random.default_rng(3)
        rho = random_density(rng, 12)
        for sub in (0, 1):
            double = partial_transpose(partial_transpose(rho, (3, 4), sub), (3, 4), sub)
            np.testing.assert_array_equal(double, rho)

    def test_separable_diagonal_state_stays_positive(self):
        rng = np.random.default_rng(4)
        probs = rng.random(9)
        probs /= probs.sum()
        rho = np.diag(probs).astype(complex)
        pt = partial_transpose(rho, (3, 3), 0)
        assert np.linalg.eigvalsh(pt).min() >= -1e-14

    def test_noon_negative_eigenvalue(self):
        # oracle: brute-force eigendecomposition of the partially transposed
        # two-qutrit pair state gives min eigenvalue exactly -1/2
        pt = partial_transpose(noon_state(), (3, 3), 0)
        eigs = np.linalg.eigvalsh(0.5 * (pt + pt.conj().T))
        assert eigs.min() == pytest.approx(-0.5, abs=1e-12)

    def test_preserves_hermiticity_and_trace(self):
        rng = np.random.default_rng(5)
        rho = random_density(rng, 9)
        pt = partial_transpose(rho, (3, 3), 1)
        assert np.max(np.abs(pt - pt.conj().T)) < 1e-12
        assert np.trace(pt).real == pytest.approx(1.0, abs=1e-12)

    def test_invalid_subsystem(self):
        with pytest.raises(ValueError):
            partial_transpose(np.eye(9) / 9, (3, 3), 2)


class TestLogNegativity:
    def test_noon_is_one_bit(self):
        assert log_negativity(noon_state(), (3, 3), 0) == pytest.approx(1.0, abs=1e-9)

    def test_product_states_carry_none(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            ra = random_density(rng, 3)
            rc = random_density(rng, 3)
            val = log_negativity(np.kron(ra, rc), (3, 3), 0)
            assert 0.0 <= val < 1e-8

    def test_symmetric_under_swap_of_transposed_cavity(self):
        dims = ModeDims((3, 3, 3))
        psi = (basis_state((2, 0, 0), dims) + basis_state((0, 0, 2), dims)) / math.sqrt(2)
        rho = np.outer(psi, psi.conj())
        reduced = partial_trace(rho, dims, keep=(0, 2))
        e0 = log_negativity(reduced, (3, 3), 0)
        e1 = log_negativity(reduced, (3, 3), 1)
        assert abs(e0 - e1) < 1e-9


class TestDetunedRabiProfile:
    def test_resonant_values(self):
        omega, amp = detuned_rabi_profile(0.0, G_EFF)
        assert omega == pytest.approx(G_EFF)
        assert amp == 1.0

    def test_half_amplitude_point(self):
        _, amp = detuned_rabi_profile(2 * G_EFF, G_EFF)
        assert amp == pytest.approx(0.5)

    def test_frequency_grows_with_detuning(self):
        o1, _ = detuned_rabi_profile(G_EFF, G_EFF)
        o2, _ = detuned_rabi_profile(3 * G_EFF, G_EFF)
        assert o2 > o1 > G_EFF

    def test_requires_positive_coupling(self):
        with pytest.raises(ValueError):
            detuned_rabi_profile(0.1, 0.0)


@pytest.fixture(scope="module")
def mini_chevron():
    params = SystemParams(omega_a=1 + G * G, omega_c=1 + G * G, g=G,
                          gamma_a=5e-4, gamma_b=5e-4, gamma_c=5e-4)
    dims = ModeDims((4, 3, 4))
    deltas = np.array([-2.0, 0.0, 2.0]) * G_EFF
    grid = TimeGrid(t_end=240.0, n_points=41)
    return chevron_scan(params, deltas, grid, dims, split_dt=0.05)


class TestChevronScan:
    def test_initial_state_is_separable(self, mini_chevron):
        np.testing.assert_allclose(mini_chevron.surface[0, :], 0.0, atol=1e-10)

    def test_peak_on_resonant_column(self, mini_chevron):
        peaks = mini_chevron.surface.max(axis=0)
        assert peaks[1] == max(peaks)
        assert peaks[1] > 0.5

    def test_symmetric_in_detuning(self, mini_chevron):
        assert abs(mini_chevron.surface[:, 0].max()
                   - mini_chevron.surface[:, 2].max()) < 0.02 * mini_chevron.surface.max()

    def test_surface_nonnegative_and_shaped(self, mini_chevron):
        assert mini_chevron.surface.min() >= 0.0
        assert mini_chevron.surface.shape == (41, 3)


class TestAmplitudeScan:
    def test_matches_two_level_profile(self):
        params = SystemParams(omega_a=1 + G * G, omega_c=1 + G * G, g=G)
        dims = ModeDims((5, 4, 5))
        deltas = np.array([-4.0, -2.0, 0.0, 2.0, 4.0]) * G_EFF
        amps = population_amplitude_scan(params, deltas, dims, G_EFF)
        for delta, amp in zip(deltas, amps):
            _, expected = detuned_rabi_profile(delta, G_EFF)
            assert amp == pytest.approx(expected, rel=0.1), f"delta={delta}"
