"""Norm layer: L^p, Sobolev, Littlewood-Paley blocks, Besov, intersection."""

import math

import numpy as np
import pytest

from nlszp import (
    Field,
    Grid,
    besov_norm,
    hom_sobolev_norm,
    inhom_sobolev_norm,
    l2_norm,
    littlewood_paley_block,
    lp_norm,
    zhidkov_band_norm,
    zhidkov_norm,
)
from nlszp.datafamilies import DataFamily, Gaussian, synthesize
from nlszp.norms import (
    NormKind,
    compute_norm,
    dyadic_range,
    hom_sobolev_lr_norm,
    low_frequency_projection,
)
from nlszp.spectral import SpectralError, Spectrum, to_field

from conftest import mean_free, random_field


def pure_mode(grid: Grid, k: int, amplitude: complex = 1.0) -> Field:
    x = grid.axis_coordinates()
    return Field(grid, amplitude * np.exp(2j * np.pi * k * x / grid.box_length))


class TestLpNorms:
    def test_constant_lp(self):
        g = Grid(1, 64, 8.0)
        f = Field(g, 3.0 * np.ones(64))
        # ||c||_p = |c| L^{1/p}
        assert lp_norm(f, 4.0) == pytest.approx(3.0 * 8.0 ** (1.0 / 4.0), rel=1e-12)

    def test_sup_norm(self):
        g = Grid(1, 64, 8.0)
        values = np.zeros(64, dtype=complex)
        values[7] = 2.0 - 1.0j
        f = Field(g, values)
        assert lp_norm(f, math.inf) == pytest.approx(abs(2.0 - 1.0j))

    def test_triangle_inequality(self, grid_1d, rng):
        f = random_field(grid_1d, rng)
        g = random_field(grid_1d, rng)
        for p in (1.0, 2.0, 4.0, math.inf):
            assert lp_norm(f + g, p) <= lp_norm(f, p) + lp_norm(g, p) + 1e-12

    def test_homogeneity(self, random_field_1d):
        for p in (1.0, 3.0, math.inf):
            assert lp_norm(2.5 * random_field_1d, p) == pytest.approx(
                2.5 * lp_norm(random_field_1d, p), rel=1e-12
            )

    def test_rejects_p_below_one(self, random_field_1d):
        with pytest.raises(ValueError, match="not a norm"):
            lp_norm(random_field_1d, 0.5)

    def test_gaussian_l2_oracle(self):
        # [DERIVED] ||e^{-x^2/2}||_{L^2(R)} = pi^{1/4}; the box value matches
        # to quadrature accuracy once the tail is far below machine precision.
        g = Grid(1, 256, 32.0)
        f = synthesize(DataFamily(Gaussian(width=1.0), g))
        assert l2_norm(f) == pytest.approx(math.pi**0.25, abs=1e-6)


class TestSobolevNorms:
    def test_pure_mode_hs(self):
        # [TRIVIAL] a single mode at xi has Hdot^s norm |xi|^s |c| L^{d/2}
        g = Grid(1, 64, 8.0)
        f = pure_mode(g, 3, amplitude=2.0)
        xi = 2.0 * np.pi * 3 / 8.0
        for s in (0.5, 1.0, 1.5):
            expected = xi**s * 2.0 * math.sqrt(8.0)
            assert hom_sobolev_norm(f, s) == pytest.approx(expected, rel=1e-10)

    def test_zero_mode_dropped(self):
        g = Grid(1, 64, 8.0)
        f = Field(g, 5.0 * np.ones(64))
        assert hom_sobolev_norm(f, 0.7) == pytest.approx(0.0, abs=1e-14)

    def test_hs0_equals_l2_on_mean_free(self, random_field_1d):
        f = mean_free(random_field_1d)
        assert hom_sobolev_norm(f, 0.0) == pytest.approx(l2_norm(f), rel=1e-10)

    def test_inhom_dominates_hom(self, random_field_1d):
        s = 0.8
        assert inhom_sobolev_norm(random_field_1d, s) >= hom_sobolev_norm(
            random_field_1d, s
        )

    def test_gaussian_half_derivative_oracle(self):
        # [DERIVED] ||e^{-x^2/2}||_{Hdot^{1/2}(R)}^2
        #   = (1/2pi) int |xi| * 2 pi e^{-xi^2} dxi = 1,
        # frozen against a 1e-8 quadrature on a large box.
        g = Grid(1, 8192, 512.0)
        f = synthesize(DataFamily(Gaussian(width=1.0), g))
        assert hom_sobolev_norm(f, 0.5) == pytest.approx(1.0, abs=1e-4)

    def test_wsr_reduces_to_hs_at_r2(self, random_field_1d):
        f = mean_free(random_field_1d)
        assert hom_sobolev_lr_norm(f, 0.6, 2.0) == pytest.approx(
            hom_sobolev_norm(f, 0.6), rel=1e-10
        )


class TestLittlewoodPaley:
    def test_dyadic_range_example(self):
        # min freq 2 pi/16 ~ 0.39 -> j_min = -2; Nyquist pi * 4 -> j_max = 5
        assert dyadic_range(Grid(1, 64, 16.0)) == (-2, 5)

    def test_partition_of_unity(self, grid_1d, rng):
        f = mean_free(random_field(grid_1d, rng))
        j_min, j_max = dyadic_range(grid_1d)
        total = np.zeros(grid_1d.shape, dtype=complex)
        for j in range(j_min, j_max + 1):
            total = total + littlewood_paley_block(f, j).values
        assert np.max(np.abs(total - f.values)) < 1e-12 * np.max(np.abs(f.values))

    def test_partition_of_unity_3d(self, grid_3d, rng):
        f = mean_free(random_field(grid_3d, rng))
        j_min, j_max = dyadic_range(grid_3d)
        total = np.zeros(grid_3d.shape, dtype=complex)
        for j in range(j_min, j_max + 1):
            total = total + littlewood_paley_block(f, j).values
        assert np.max(np.abs(total - f.values)) < 1e-12 * np.max(np.abs(f.values))

    def test_block_localization(self):
        # A mode at |xi| ~ 2^j only meets blocks j and j+1 of the bump pair.
        g = Grid(1, 256, 16.0)
        f = pure_mode(g, 16)  # xi = 2 pi  -> between 2^2 and 2^3
        energies = {}
        j_min, j_max = dyadic_range(g)
        for j in range(j_min, j_max + 1):
            energies[j] = l2_norm(littlewood_paley_block(f, j))
        live = {j for j, e in energies.items() if e > 1e-12}
        assert live <= {2, 3, 4}
        assert live  # not everything vanished

    def test_out_of_range_block(self, random_field_1d):
        with pytest.raises(SpectralError, match="empty block"):
            littlewood_paley_block(random_field_1d, 40)

    def test_low_projection_keeps_dc(self):
        g = Grid(1, 64, 8.0)
        f = Field(g, 1.5 * np.ones(64))
        out = low_frequency_projection(f)
        assert np.max(np.abs(out.values - f.values)) < 1e-12


class TestBesov:
    def test_b022_matches_l2(self, grid_1d, rng):
        # [DERIVED] Bdot^0_{2,2} = Hdot^0 = L^2 on mean-free fields, up to
        # the almost-orthogonality of the blocks (exact here by Plancherel
        # and the partition of unity, within block-overlap factors).
        f = mean_free(random_field(grid_1d, rng))
        ratio = besov_norm(f, 0.0, 2.0, 2.0) / l2_norm(f)
        assert 0.5 <= ratio <= 2.0

    def test_bs22_comparable_to_hs(self, grid_1d, rng):
        f = mean_free(random_field(grid_1d, rng))
        s = 0.5
        ratio = besov_norm(f, s, 2.0, 2.0) / hom_sobolev_norm(f, s)
        assert 0.5 <= ratio <= 2.0

    def test_q_inf_below_q2(self, random_field_1d):
        f = mean_free(random_field_1d)
        assert besov_norm(f, 0.3, math.inf, 4.0) <= besov_norm(f, 0.3, 2.0, 4.0) + 1e-12

    def test_inhomogeneous_includes_low_part(self):
        g = Grid(1, 64, 8.0)
        f = Field(g, np.ones(64))
        assert besov_norm(f, 0.5, 2.0, 2.0, homogeneous=True) == pytest.approx(0.0, abs=1e-10)
        assert besov_norm(f, 0.5, 2.0, 2.0, homogeneous=False) > 1.0

    def test_rejects_q_below_one(self, random_field_1d):
        with pytest.raises(ValueError, match="not a norm"):
            besov_norm(random_field_1d, 0.5, 0.5, 2.0)


class TestIntersectionNorms:
    def test_zhidkov_is_sum(self, random_field_1d):
        s, p = 0.5, 4.0
        assert zhidkov_norm(random_field_1d, s, p) == pytest.approx(
            lp_norm(random_field_1d, p) + hom_sobolev_norm(random_field_1d, s),
            rel=1e-12,
        )

    def test_band_norm_dominates_endpoints(self, random_field_1d):
        s, n, p = 0.5, 2, 4.0
        band = zhidkov_band_norm(random_field_1d, s, n, p)
        assert band >= zhidkov_norm(random_field_1d, s, p) - 1e-9
        assert band >= zhidkov_norm(random_field_1d, s + n, p) - 1e-9

    def test_band_norm_pure_mode_exact(self):
        # For a single mode the sup over alpha is attained at an endpoint.
        g = Grid(1, 64, 8.0)
        f = pure_mode(g, 5)
        band = zhidkov_band_norm(f, 0.5, 1, 4.0)
        expected = max(zhidkov_norm(f, 0.5, 4.0), zhidkov_norm(f, 1.5, 4.0))
        assert band == pytest.approx(expected, rel=1e-10)

    def test_band_width_must_be_positive(self, random_field_1d):
        with pytest.raises(ValueError):
            zhidkov_band_norm(random_field_1d, 0.5, 0.0, 4.0)


class TestDispatch:
    @pytest.mark.parametrize(
        "kind,params",
        [
            ("lp", {"p": 4.0}),
            ("hs", {"s": 0.5}),
            ("ws", {"s": 0.5}),
            ("hsr", {"s": 0.5, "r": 4.0}),
            ("besov", {"s": 0.5, "q": 2.0, "p": 4.0}),
            ("zhidkov", {"s": 0.5, "p": 4.0}),
            ("zhidkov_band", {"s": 0.5, "n": 1, "p": 4.0}),
        ],
    )
    def test_all_kinds(self, random_field_1d, kind, params):
        value = compute_norm(random_field_1d, NormKind(kind, params))
        assert value > 0 and math.isfinite(value)

    def test_unknown_kind(self, random_field_1d):
        with pytest.raises(ValueError, match="unknown norm kind"):
            compute_norm(random_field_1d, NormKind("nope"))
