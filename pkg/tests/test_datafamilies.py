"""Initial-data families: shapes, oracles, seam smoothness, L-sweeps."""

import math

import numpy as np
import pytest

from nlszp import (
    DataFamily,
    Gaussian,
    Grid,
    PowerTail,
    PureMode,
    synthesize,
)
from nlszp.datafamilies import Custom, power_tail_window, randomize_phase
from nlszp.fieldio import write_zfld
from nlszp.norms import hom_sobolev_norm, l2_norm, lp_norm
from nlszp.spectral import to_spectrum


class TestGaussian:
    def test_l2_oracle(self):
        # [DERIVED] ||A e^{-r^2/(2w^2)}||_{L^2(R^d)} = A (pi^{1/2} w)^{d/2}
        g = Grid(1, 256, 32.0)
        f = synthesize(DataFamily(Gaussian(width=1.0, amplitude=1.0), g))
        assert l2_norm(f) == pytest.approx(math.pi**0.25, abs=1e-8)

    def test_l2_oracle_3d(self):
        g = Grid(3, 32, 24.0)
        f = synthesize(DataFamily(Gaussian(width=1.0, amplitude=2.0), g))
        assert l2_norm(f) == pytest.approx(2.0 * math.pi**0.75, rel=1e-3)

    def test_peak_at_center(self):
        g = Grid(1, 256, 32.0)
        f = synthesize(DataFamily(Gaussian(width=1.0, amplitude=3.0), g))
        assert np.max(np.abs(f.values)) == pytest.approx(3.0, rel=1e-12)


class TestPureMode:
    def test_single_coefficient(self):
        g = Grid(1, 64, 8.0)
        f = synthesize(DataFamily(PureMode(k=3, amplitude=1.5), g))
        s = to_spectrum(f)
        assert s.coeffs[3] == pytest.approx(1.5)

    def test_tuple_mode_3d(self):
        g = Grid(3, 16, 8.0)
        f = synthesize(DataFamily(PureMode(k=(1, 2, 0)), g))
        s = to_spectrum(f)
        assert s.coeffs[1, 2, 0] == pytest.approx(1.0)

    def test_dimension_mismatch(self):
        g = Grid(2, 16, 8.0)
        with pytest.raises(ValueError, match="dimension"):
            synthesize(DataFamily(PureMode(k=(1, 2, 3)), g))


class TestPowerTail:
    def test_gamma_window(self):
        lo, hi = power_tail_window(1, 4.0)
        assert lo == 0.25 and hi == 0.5
        lo3, hi3 = power_tail_window(3, 4.25)
        assert lo3 == pytest.approx(3.0 / 4.25) and hi3 == 1.5

    def test_gamma_out_of_range(self):
        g = Grid(1, 64, 16.0)
        with pytest.raises(ValueError, match="gamma"):
            synthesize(DataFamily(PowerTail(gamma=0.8), g))  # > d/2 in 1-D

    def test_seam_smoothness(self):
        # The chordal radius keeps the profile C-infinity across the
        # periodic seam, so its spectrum decays fast: the Nyquist-shell
        # content must be negligible.
        g = Grid(1, 512, 64.0)
        f = synthesize(DataFamily(PowerTail(gamma=0.45, core_width=2.0), g))
        s = to_spectrum(f)
        k = np.fft.fftfreq(512, d=1.0 / 512)
        high = np.abs(s.coeffs[np.abs(k) > 200])
        assert np.max(high) < 1e-12 * np.max(np.abs(s.coeffs))

    def test_mass_diverges_with_box(self):
        # The finite-L signature of infinite mass: L^2 grows with L while
        # the L^4 and Hdot^1 norms stay essentially flat.
        l2s, l4s, h1s = [], [], []
        for L in (32.0, 64.0, 128.0, 256.0):
            g = Grid(1, int(4 * L), L)
            f = synthesize(DataFamily(PowerTail(gamma=0.45, core_width=4.0), g))
            l2s.append(l2_norm(f))
            l4s.append(lp_norm(f, 4.0))
            h1s.append(hom_sobolev_norm(f, 1.0))
        assert l2s == sorted(l2s)
        assert l2s[-1] > 1.4 * l2s[0]
        # the L^4 norm converges; Hdot^1 converges more slowly but stays
        # far below the L^2 growth rate
        assert l4s[-1] < 1.05 * l4s[0]
        assert h1s[-1] < 1.3 * h1s[0]
        assert h1s[-1] / h1s[0] < l2s[-1] / l2s[0]


class TestCustomAndPhase:
    def test_custom_round_trip(self, tmp_path, grid_1d, rng):
        from conftest import random_field

        f = random_field(grid_1d, rng)
        path = tmp_path / "data.zfld"
        write_zfld(path, f)
        out = synthesize(DataFamily(Custom(path=str(path)), grid_1d))
        np.testing.assert_array_equal(out.values, f.values)

    def test_custom_grid_mismatch(self, tmp_path, grid_1d, rng):
        from conftest import random_field

        f = random_field(grid_1d, rng)
        path = tmp_path / "data.zfld"
        write_zfld(path, f)
        other = Grid(1, 128, 16.0)
        with pytest.raises(ValueError, match="grid"):
            synthesize(DataFamily(Custom(path=str(path)), other))

    def test_randomize_phase_preserves_moduli(self, grid_1d, rng):
        from conftest import random_field

        f = random_field(grid_1d, rng)
        g = randomize_phase(f, seed=7)
        sf, sg = to_spectrum(f), to_spectrum(g)
        np.testing.assert_allclose(np.abs(sg.coeffs), np.abs(sf.coeffs), rtol=1e-10)
        assert l2_norm(g) == pytest.approx(l2_norm(f), rel=1e-10)

    def test_randomize_phase_deterministic(self, grid_1d, rng):
        from conftest import random_field

        f = random_field(grid_1d, rng)
        a = randomize_phase(f, seed=11)
        b = randomize_phase(f, seed=11)
        np.testing.assert_array_equal(a.values, b.values)
