"""Grid, quadrature, Fourier-transform and linear-algebra contracts."""

import numpy as np
import pytest

from qmodes.numerics import (
    Grid1D,
    GridLeakageError,
    NonHermitianError,
    SampledWave,
    conjugate_grid,
    eigh,
    fourier_to_momentum,
    fourier_to_position,
    make_grid,
    quadrature,
    svd,
    trapezoid_weights,
)


def gaussian_wave(grid, sigma, center=0.0):
    x = grid.points
    amp = (1.0 / (np.sqrt(2.0 * np.pi) * sigma)) ** 0.5 * np.exp(
        -((x - center) ** 2) / (4.0 * sigma**2)
    )
    return SampledWave(grid, amp.astype(complex))


def random_smooth_wave(rng, grid):
    """Few random Gaussians with random phases: boundary-safe on a wide grid."""
    x = grid.points
    amp = np.zeros(grid.n_points, dtype=complex)
    for _ in range(rng.integers(1, 4)):
        center = rng.uniform(-3.0, 3.0)
        width = rng.uniform(0.5, 1.5)
        k0 = rng.uniform(-2.0, 2.0)
        coeff = rng.normal() + 1j * rng.normal()
        amp += coeff * np.exp(-((x - center) ** 2) / (4.0 * width**2) + 1j * k0 * x)
    wave = SampledWave(grid, amp)
    return wave.normalized()


class TestGrid:
    def test_symmetric_three_points(self):
        assert np.allclose(make_grid(0, 1, 3).points, [-1.0, 0.0, 1.0])

    def test_spacing_definition(self):
        assert make_grid(0, 20, 1024).spacing == pytest.approx(40.0 / 1023.0, rel=1e-15)

    def test_offset_grid(self):
        assert np.allclose(make_grid(5, 2, 5).points, [3, 4, 5, 6, 7])

    def test_spacing_matches_endpoints(self):
        g = make_grid(1.7, 3.3, 777)
        reconstructed = g.x_min + g.spacing * (g.n_points - 1)
        assert reconstructed == pytest.approx(g.x_max, rel=1e-12)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            make_grid(0, 1, 1)
        with pytest.raises(ValueError):
            make_grid(0, -1, 16)
        with pytest.raises(ValueError):
            Grid1D(8, 2.0, 1.0)


class TestQuadrature:
    def test_constant_exact(self):
        for n in (2, 17, 128):
            g = Grid1D(n, 0.0, 1.0)
            assert quadrature(np.ones(n), g) == pytest.approx(1.0, abs=1e-14)

    def test_gaussian_normalization(self):
        g = make_grid(0, 10, 1024)
        x = g.points
        density = np.exp(-(x**2) / 2.0) / np.sqrt(2.0 * np.pi)
        assert quadrature(density, g) == pytest.approx(1.0, abs=1e-10)

    def test_odd_function_cancels(self):
        g = make_grid(0, 1, 201)
        assert abs(quadrature(g.points, g)) < 1e-14

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            quadrature(np.ones(5), make_grid(0, 1, 6))

    def test_weights_sum_to_length(self):
        g = make_grid(0, 2, 57)
        assert trapezoid_weights(g).sum() == pytest.approx(4.0, rel=1e-14)


class TestFourier:
    def test_gaussian_matches_momentum_envelope(self):
        # centered slit: |psi~|^2 is Gaussian with variance 1/(4 sigma_x^2)
        sigma = 0.5
        wave = gaussian_wave(make_grid(0, 10, 1024), sigma)
        tilde = fourier_to_momentum(wave)
        p = tilde.grid.points
        expected = (1.0 / (2.0 * np.pi)) ** 0.25 * np.sqrt(2.0 * sigma) * np.exp(-(sigma**2) * p**2)
        assert np.max(np.abs(np.abs(tilde.amplitudes) - expected)) < 1e-8
        density = np.abs(tilde.amplitudes) ** 2
        variance = quadrature(p**2 * density, tilde.grid).real
        assert variance == pytest.approx(1.0 / (4.0 * sigma**2), rel=1e-8)

    def test_shift_theorem(self):
        sigma, a = 0.5, 5.0
        grid = make_grid(0, 11, 2048)
        tilde0 = fourier_to_momentum(gaussian_wave(grid, sigma, 0.0))
        tilde_a = fourier_to_momentum(gaussian_wave(grid, sigma, a))
        assert np.max(np.abs(np.abs(tilde_a.amplitudes) - np.abs(tilde0.amplitudes))) < 1e-10
        p = tilde0.grid.points
        big = np.abs(tilde0.amplitudes) > 1e-6
        phase = tilde_a.amplitudes[big] / tilde0.amplitudes[big]
        assert np.max(np.abs(phase - np.exp(-1j * p[big] * a))) < 1e-8

    def test_two_slit_transform_matches_closed_form(self):
        # independent route to the cos^2 interference pattern
        from qmodes.interference import two_slit_intensity, two_slit_norm

        sigma, a = 0.5, 5.0
        grid = make_grid(0, 11, 2048)
        x = grid.points
        c = np.sqrt(two_slit_norm(a, sigma))
        amp = (
            c
            * (1.0 / (np.sqrt(2.0 * np.pi) * 2.0 * sigma)) ** 0.5
            * (np.exp(-((x - a) ** 2) / (4 * sigma**2)) + np.exp(-((x + a) ** 2) / (4 * sigma**2)))
        )
        tilde = fourier_to_momentum(SampledWave(grid, amp.astype(complex)))
        numeric = np.abs(tilde.amplitudes) ** 2
        expected = two_slit_intensity(a, sigma, tilde.grid.points)
        assert np.max(np.abs(numeric - expected)) < 1e-6

    def test_leakage_rejected(self):
        wave = gaussian_wave(make_grid(0, 2, 256), 1.0)
        with pytest.raises(GridLeakageError):
            fourier_to_momentum(wave)

    def test_conjugate_grid_contains_zero(self):
        g = conjugate_grid(make_grid(0, 10, 1024))
        assert np.min(np.abs(g.points)) == 0.0
        assert g.spacing == pytest.approx(2 * np.pi / (1024 * (20 / 1023)), rel=1e-12)

    def test_parseval_and_round_trip_randomized(self):
        rng = np.random.default_rng(7)
        grid = make_grid(0, 30, 512)
        for _ in range(100):
            wave = random_smooth_wave(rng, grid)
            tilde = fourier_to_momentum(wave)
            n_x = quadrature(np.abs(wave.amplitudes) ** 2, grid).real
            n_p = quadrature(np.abs(tilde.amplitudes) ** 2, tilde.grid).real
            assert abs(n_x - n_p) < 1e-8
            back = fourier_to_position(tilde, grid)
            assert np.max(np.abs(back.amplitudes - wave.amplitudes)) < 1e-8

    def test_inverse_grid_compatibility_checked(self):
        wave = gaussian_wave(make_grid(0, 10, 512), 0.7)
        tilde = fourier_to_momentum(wave)
        with pytest.raises(ValueError):
            fourier_to_position(tilde, make_grid(0, 3, 512))


class TestSvd:
    def test_diagonal(self):
        _, s, _ = svd(np.diag([3.0, 1.0]))
        assert np.allclose(s, [3.0, 1.0])

    def test_rank_one(self):
        u = np.array([1.0, 1j]) / np.sqrt(2)
        v = np.array([1.0, -1.0, 0.0]) / np.sqrt(2)
        _, s, _ = svd(np.outer(u, v.conj()))
        assert s[0] == pytest.approx(1.0, abs=1e-12)
        assert s[1] < 1e-12

    def test_reconstruction_random_complex(self):
        rng = np.random.default_rng(3)
        m = rng.normal(size=(6, 4)) + 1j * rng.normal(size=(6, 4))
        u, s, v = svd(m)
        rebuilt = u @ np.diag(s) @ v.conj().T
        assert np.linalg.norm(rebuilt - m) / np.linalg.norm(m) < 1e-10

    def test_reconstruction_property(self):
        rng = np.random.default_rng(11)
        for _ in range(100):
            rows = int(rng.integers(1, 65))
            cols = int(rng.integers(1, 65))
            m = rng.normal(size=(rows, cols)) + 1j * rng.normal(size=(rows, cols))
            u, s, v = svd(m)
            assert np.all(np.diff(s) <= 1e-12)
            assert np.all(s >= 0)
            rebuilt = u @ np.diag(s) @ v.conj().T
            assert np.linalg.norm(rebuilt - m) <= 1e-10 * max(1.0, np.linalg.norm(m))


class TestEigh:
    def test_diagonal(self):
        values, _ = eigh(np.diag([1.0, 2.0]))
        assert np.allclose(values, [1.0, 2.0])

    def test_pauli_x(self):
        values, vectors = eigh(np.array([[0.0, 1.0], [1.0, 0.0]]))
        assert np.allclose(values, [-1.0, 1.0])
        assert np.allclose(np.abs(vectors), np.full((2, 2), 1 / np.sqrt(2)))

    def test_uncoupled_two_qubit_spectrum(self):
        from qmodes.tunneling import (
            AMMONIA_ISOTOPES,
            DoubleWell,
            build_two_qubit,
            derive_well,
            two_level_energies,
        )

        well = DoubleWell(69.29, 141.73, AMMONIA_ISOTOPES["NH3"].mass)
        derived = derive_well(well)
        energies = two_level_energies(derived, well)
        system = build_two_qubit(energies, derived, g0=0.0)
        values, _ = eigh(system.h_matrix)
        e0, e1 = energies.e0, energies.e1
        assert np.allclose(np.sort(values), np.sort([2 * e0, e0 + e1, e0 + e1, 2 * e1]), atol=1e-12)

    def test_non_hermitian_rejected(self):
        with pytest.raises(NonHermitianError):
            eigh(np.array([[0.0, 1.0], [0.0, 0.0]]))

    def test_residuals_property(self):
        rng = np.random.default_rng(13)
        for _ in range(100):
            n = int(rng.integers(2, 65))
            a = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            h = 0.5 * (a + a.conj().T)
            values, vectors = eigh(h)
            residual = np.max(np.abs(h @ vectors - vectors * values))
            assert residual < 1e-10 * max(1.0, np.max(np.abs(values)))
            gram = vectors.conj().T @ vectors
            assert np.max(np.abs(gram - np.eye(n))) < 1e-10
