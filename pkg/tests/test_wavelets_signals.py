import numpy as np
import pytest

from coorbit2d import (
    CoverageWarning,
    GridSignal,
    GroupSpec,
    diagonal,
    default_wavelet,
    freq_bump,
    freq_grids,
    gen_test_signal,
    psi_atom,
    rotation,
    shearlet,
    signal_from_spectrum,
    similitude,
    spectral_norm_l2,
    spectrum_from_signal,
    wave_packet,
)
from coorbit2d.wavelets import bump, verify_support_in_orbit


class TestBump:
    def test_peak_and_support(self):
        assert bump(0.0) == 1.0
        assert bump(1.0) == 0.0
        assert bump(-1.0) == 0.0
        assert bump(2.5) == 0.0

    def test_value(self):
        assert bump(0.5) == pytest.approx(np.exp(1 - 1 / 0.75))


class TestWaveletProfiles:
    def test_similitude_unit_circle_peak(self):
        psi = default_wavelet(GroupSpec(similitude()))
        assert psi.evaluate(1.0, 0.0) == 1.0
        assert psi.evaluate(0.0, -1.0) == 1.0
        assert psi.evaluate(2.0, 0.0) == 0.0

    def test_shearlet_closed_form(self):
        psi = default_wavelet(GroupSpec(shearlet(1.0)))
        assert psi.evaluate(1.0, 0.5) == pytest.approx(np.exp(-1.0 / 3.0))

    def test_diagonal_product_form(self):
        psi = default_wavelet(GroupSpec(diagonal()))
        assert psi.evaluate(1.0, 1.0) == 1.0
        assert psi.evaluate(1.0, 0.0) == 0.0

    def test_conjugated_evaluation_point(self):
        b = rotation(0.6)
        psi = default_wavelet(GroupSpec(similitude(), b))
        # radial profile evaluated at B^T xi: rotation keeps radius
        assert psi.evaluate(1.0, 0.0) == 1.0

    def test_amplitude_scaling(self):
        psi = default_wavelet(GroupSpec(similitude())).scaled(2.0)
        assert psi.evaluate(1.0, 0.0) == 2.0

    def test_support_inside_orbit(self, rng):
        for fam in (similitude(), diagonal(), shearlet(0.5)):
            m = rng.normal(size=(2, 2)) + 2 * np.eye(2)
            spec = GroupSpec(fam, m)
            psi = default_wavelet(spec)
            verify_support_in_orbit(psi, spec)  # must not raise

    def test_masked_zero_on_complement(self):
        psi = default_wavelet(GroupSpec(shearlet(2.0)))
        assert psi.evaluate(0.0, 1.0) == 0.0
        psi_d = default_wavelet(GroupSpec(diagonal()))
        assert psi_d.evaluate(0.0, 0.7) == 0.0


class TestGridSignal:
    def test_validation(self):
        with pytest.raises(ValueError):
            GridSignal(6, 1.0, np.zeros((6, 6)))
        with pytest.raises(ValueError):
            GridSignal(16, -1.0, np.zeros((16, 16)))
        with pytest.raises(ValueError):
            GridSignal(16, 1.0, np.zeros((8, 8)))

    def test_round_trip_transforms(self, rng):
        data = rng.normal(size=(16, 16)) + 1j * rng.normal(size=(16, 16))
        sig = GridSignal(16, 4.0, data)
        back = signal_from_spectrum(spectrum_from_signal(sig), 16, 4.0)
        assert np.allclose(back, data, atol=1e-13)

    def test_grid_plancherel_exact(self, rng):
        data = rng.normal(size=(32, 32)) + 1j * rng.normal(size=(32, 32))
        sig = GridSignal(32, 8.0, data)
        assert spectral_norm_l2(spectrum_from_signal(sig), 8.0) == pytest.approx(
            sig.norm_l2(), rel=1e-12
        )

    def test_spectrum_phase_convention(self):
        # a pure frequency on the lattice: f(x) = exp(2 pi i k.x / L)
        n, length = 16, 4.0
        k = (2, -3)
        pos = (np.arange(n) / n - 0.5) * length
        x1, x2 = np.meshgrid(pos, pos, indexing="ij")
        data = np.exp(2j * np.pi * (k[0] * x1 + k[1] * x2) / length)
        spec = spectrum_from_signal(GridSignal(n, length, data))
        xi1, xi2 = freq_grids(n, length)
        mask = (np.isclose(xi1, k[0] / length) & np.isclose(xi2, k[1] / length))
        # all mass at the single lattice frequency, value = L^2
        assert np.sum(mask) == 1
        assert spec[mask][0] == pytest.approx(length ** 2, rel=1e-12)
        assert np.max(np.abs(spec[~mask])) < 1e-10 * length ** 2


class TestGenTestSignal:
    def test_gaussian_plancherel_analytic(self):
        f = freq_bump(128, 16.0, center=(1.0, 0.4), sigma=0.12)
        assert f.signal.norm_l2() == pytest.approx(
            np.sqrt(np.pi) * 0.12, rel=1e-6
        )

    def test_bump_plancherel_quadrature_oracle(self):
        # the compact bump needs a finer frequency lattice than the gaussian
        sigma = 0.4
        f = freq_bump(128, 32.0, center=(0.9, -0.2), sigma=sigma, shape="bump")
        # independent oracle: fine Riemann integration of the closed form
        t = np.linspace(-sigma, sigma, 4001)
        tt1, tt2 = np.meshgrid(t, t, indexing="ij")
        vals = f.spectrum(tt1 + 0.9, tt2 - 0.2)
        step = t[1] - t[0]
        oracle = np.sqrt(np.sum(np.abs(vals) ** 2) * step * step)
        assert f.signal.norm_l2() == pytest.approx(oracle, rel=1e-6)

    def test_psi_atom_norm_against_spectrum(self):
        psi = default_wavelet(GroupSpec(similitude()))
        f = psi_atom(128, 16.0, psi)
        xi1, xi2 = freq_grids(128, 16.0)
        expected = spectral_norm_l2(psi.evaluate(xi1, xi2), 16.0)
        assert f.signal.norm_l2() == pytest.approx(expected, rel=1e-12)

    def test_zero_amplitude_gives_zero_signal(self):
        f = freq_bump(32, 8.0, center=(0.8, 0.0), sigma=0.2, amplitude=0.0)
        assert np.all(f.signal.data == 0.0)

    def test_spatial_offset_phase(self):
        f0 = freq_bump(64, 16.0, center=(1.0, 0.0), sigma=0.2)
        x0 = (16.0 / 64) * 3
        f1 = freq_bump(64, 16.0, center=(1.0, 0.0), sigma=0.2, x0=(x0, 0.0))
        shifted = np.roll(f0.signal.data, 3, axis=0)
        assert np.allclose(f1.signal.data, shifted, atol=1e-12)

    def test_leak_warning(self):
        with pytest.warns(CoverageWarning):
            freq_bump(16, 16.0, center=(0.45, 0.0), sigma=0.2)

    def test_wave_packet_norm(self):
        f = wave_packet(64, 16.0, center=(1.0, 0.5), sigma_along=0.15,
                        sigma_across=0.08, direction=0.4)
        # 2D anisotropic gaussian: ||fhat||_2^2 = pi * s1 * s2
        assert f.signal.norm_l2() == pytest.approx(
            np.sqrt(np.pi * 0.15 * 0.08), rel=1e-6
        )

    def test_unknown_kind(self):
        with pytest.raises(ValueError):
            gen_test_signal("mystery", 16, 4.0)
