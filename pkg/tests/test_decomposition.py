"""Frequency splittings and the epsilon-power bookkeeping."""

import math

import numpy as np
import pytest

from nlszp import (
    Field,
    Grid,
    frequency_split,
    hom_sobolev_norm,
    l2_norm,
    make_truncation_params,
    split_at_frequency,
    zhidkov_decompose,
    zhidkov_norm,
)
from nlszp.decomposition import TruncationParams
from nlszp.spectral import SpectralError, to_spectrum

from conftest import mean_free, random_field


class TestTruncationParams:
    def test_exponent_values(self):
        params = make_truncation_params(4.25, 0.1)
        assert params.theta == pytest.approx(1.0 / 18.0)
        assert params.beta == pytest.approx(11.0 / 18.0)
        assert params.globalizable
        # delta = eps^{8 theta (1 + eta)}
        assert params.delta == pytest.approx(0.1 ** (8.0 / 18.0 * 1.05))

    def test_not_globalizable_past_nine_halves(self):
        assert not make_truncation_params(4.75, 0.1).globalizable

    def test_p_window(self):
        with pytest.raises(ValueError):
            make_truncation_params(4.0, 0.1)
        with pytest.raises(ValueError):
            make_truncation_params(6.0, 0.1)

    def test_epsilon_window(self):
        with pytest.raises(ValueError):
            make_truncation_params(4.25, 1.5)
        with pytest.raises(ValueError):
            TruncationParams(p=4.25, epsilon=0.1, eta_slack=0.0,
                             theta=0.1, beta=0.5, delta=0.1, globalizable=True)


class TestSplitAtFrequency:
    def test_exact_recombination(self, grid_1d, rng):
        f = random_field(grid_1d, rng)
        low, high = split_at_frequency(f, 2.0)
        err = np.max(np.abs((low + high).values - f.values))
        assert err < 1e-12 * np.max(np.abs(f.values))

    def test_low_part_band_limited(self, grid_1d, rng):
        f = random_field(grid_1d, rng)
        low, _ = split_at_frequency(f, 2.0)
        spec = to_spectrum(low)
        mag = grid_1d.frequency_magnitude()
        assert np.max(np.abs(spec.coeffs[mag >= 2.0])) < 1e-14

    def test_high_part_no_core(self, grid_1d, rng):
        # The cutoff is identically 1 inside radius eps/2, so the high part
        # has exactly zero coefficients there.
        f = random_field(grid_1d, rng)
        _, high = split_at_frequency(f, 2.0)
        spec = to_spectrum(high)
        mag = grid_1d.frequency_magnitude()
        assert np.max(np.abs(spec.coeffs[mag <= 1.0])) < 1e-14

    def test_sharp_variant_is_projection(self, grid_1d, rng):
        f = random_field(grid_1d, rng)
        low, _ = split_at_frequency(f, 2.0, sharp=True)
        low2, _ = split_at_frequency(low, 2.0, sharp=True)
        np.testing.assert_allclose(low2.values, low.values, atol=1e-13)


class TestZhidkovDecompose:
    def test_recombines_and_reports(self, grid_1d, rng):
        g = mean_free(random_field(grid_1d, rng))
        result = zhidkov_decompose(g, n_band=2)
        recomb = result.regular + result.rough
        assert np.max(np.abs(recomb.values - g.values)) < 1e-12 * np.max(np.abs(g.values))
        report = result.report
        assert report["input_zsp_norm"] > 0
        assert report["regular_band_norm"] > 0
        assert report["rough_hs_norm"] > 0
        assert report["regular_ratio"] == pytest.approx(
            report["regular_band_norm"] / report["input_zsp_norm"]
        )

    def test_regular_part_smooth(self, grid_1d, rng):
        # Band-limited to |xi| <= 1: every Hdot^alpha norm of the regular
        # part is bounded by the L^2 norm, uniformly over the band.
        g = mean_free(random_field(grid_1d, rng))
        result = zhidkov_decompose(g, n_band=3)
        reg = result.regular
        assert hom_sobolev_norm(reg, 3.5) <= l2_norm(reg) + 1e-9

    def test_rough_part_spectrum_outside_half(self, grid_1d, rng):
        g = mean_free(random_field(grid_1d, rng))
        result = zhidkov_decompose(g, n_band=1)
        spec = to_spectrum(result.rough)
        mag = grid_1d.frequency_magnitude()
        assert np.max(np.abs(spec.coeffs[(mag > 0) & (mag <= 0.5)])) < 1e-14

    def test_band_validation(self, random_field_1d):
        with pytest.raises(ValueError):
            zhidkov_decompose(random_field_1d, n_band=0)


class TestFrequencySplit:
    def grid_and_field(self, rng):
        grid = Grid(1, 512, 64.0)
        return grid, mean_free(random_field(grid, rng))

    def test_resolution_guard(self, rng):
        grid = Grid(1, 64, 8.0)  # 4 pi / L ~ 1.57
        f = random_field(grid, rng)
        params = make_truncation_params(4.25, 0.5)
        with pytest.raises(SpectralError, match="cutoff below resolution"):
            frequency_split(f, params)

    def test_low_pass_derivative_bound(self, rng):
        # [DERIVED] chi(|xi|/eps) supported in |xi| <= eps gives
        # ||psi||_{Hdot^alpha} <= (2 eps)^{alpha-1} ||u0||_{Hdot^1}, alpha > 1:
        # provable coefficientwise since |xi|^{alpha-1} <= eps^{alpha-1} <=
        # (2 eps)^{alpha-1} on the support.  Wider: |xi|^{alpha} <=
        # eps^{alpha-1} |xi| there.
        grid, f = self.grid_and_field(rng)
        eps = 0.8
        params = make_truncation_params(4.25, eps)
        result = frequency_split(f, params)
        psi = result.regular
        h1 = hom_sobolev_norm(f, 1.0)
        for alpha in (1.5, 2.5):
            assert hom_sobolev_norm(psi, alpha) <= eps ** (alpha - 1.0) * h1 + 1e-10

    def test_high_pass_mass_bound(self, rng):
        # [DERIVED] phi vanishes inside |xi| <= eps/2, so coefficientwise
        # 1 <= (2/eps) |xi| on its support and ||phi||_{L^2} <=
        # (2/eps) ||u0||_{Hdot^1}.
        grid, f = self.grid_and_field(rng)
        eps = 0.8
        params = make_truncation_params(4.25, eps)
        result = frequency_split(f, params)
        assert l2_norm(result.rough) <= (2.0 / eps) * hom_sobolev_norm(f, 1.0) + 1e-10

    def test_report_fields(self, rng):
        grid, f = self.grid_and_field(rng)
        params = make_truncation_params(4.25, 0.5)
        report = frequency_split(f, params).report
        for key in ("psi_hdot_1.0", "psi_hdot_1.5", "psi_hdot_2.5",
                    "phi_l2", "phi_l2_scaled", "phi_l4_scaled",
                    "energy_phi", "energy_phi_scaled", "u0_z1p_norm"):
            assert key in report
            assert math.isfinite(report[key])

    def test_scaled_ratios_order_one(self, rng):
        # The epsilon-power normalizations should make the reported ratios
        # O(1) rather than epsilon-divergent.
        grid, f = self.grid_and_field(rng)
        for eps in (0.4, 0.6, 0.9):
            report = frequency_split(f, make_truncation_params(4.25, eps)).report
            assert report["psi_hdot_2.5_ratio"] < 10.0
            assert report["phi_l2_scaled"] < 10.0
