"""Discrete realizations of the function-space norms.

Covers L^p, homogeneous/inhomogeneous Sobolev, Littlewood-Paley blocks and
Besov norms, and the intersection norm

    ||f||_{Z^s_p} = ||f||_{L^p} + ||f||_{Hdot^s}

together with its band variant sup_{alpha in [s, s+n]} ||f||_{Z^alpha_p}.

Quadrature convention: L^p norms are trapezoid sums, (sum |f|^p h^d)^{1/p},
which on a periodic grid is spectrally accurate for smooth integrands.
Homogeneous norms drop the zero mode (the quotient-by-constants convention),
so ||.||_{Hdot^0} equals the L^2 norm only on mean-free fields.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from typing import Any

import numpy as np

from . import bumps
from .spectral import (
    Field,
    Grid,
    Multiplier,
    SpectralError,
    apply_multiplier,
    fractional_power_symbol,
    radial_symbol,
    to_field,
    to_spectrum,
)

BAND_GRID_POINTS = 33  # resolution of the alpha-grid for band norms


def lp_norm(f: Field, p: float) -> float:
    """Discrete L^p norm; p = inf gives the max norm."""
    if p < 1:
        raise ValueError(f"not a norm: p = {p} < 1")
    mags = np.abs(f.values)
    if math.isinf(p):
        return float(mags.max())
    return float((np.sum(mags**p) * f.grid.cell_volume) ** (1.0 / p))


def l2_norm(f: Field) -> float:
    return lp_norm(f, 2.0)


def spectrum_l2_norm(grid: Grid, coeffs: np.ndarray) -> float:
    """L^2 norm straight from coefficients via Parseval."""
    return float(np.sqrt(np.sum(np.abs(coeffs) ** 2) * grid.volume))


def hom_sobolev_norm(f: Field, s: float) -> float:
    """Hdot^s norm: L^2 norm of |xi|^s f-hat, zero mode excluded."""
    spec = to_spectrum(f)
    weighted = apply_multiplier(fractional_power_symbol(s), spec)
    return spectrum_l2_norm(f.grid, weighted.coeffs)


def inhom_sobolev_norm(f: Field, s: float) -> float:
    """Classical H^s norm via the (1+|xi|^2)^{s/2} weight."""
    spec = to_spectrum(f)
    mag2 = f.grid.frequency_magnitude_squared()
    weighted = np.power(1.0 + mag2, s / 2.0) * spec.coeffs
    return spectrum_l2_norm(f.grid, weighted)


def hom_sobolev_lr_norm(f: Field, s: float, r: float) -> float:
    """Wdot^{s,r} norm: L^r of the fractional derivative."""
    spec = to_spectrum(f)
    weighted = apply_multiplier(fractional_power_symbol(s), spec)
    return lp_norm(to_field(weighted), r)


# Littlewood-Paley ----------------------------------------------------------


def dyadic_range(grid: Grid) -> tuple[int, int]:
    """Inclusive block range [j_min, j_max] covering every nonzero frequency.

    Chosen so the telescoping sum of bumps equals 1 on the whole nonzero
    lattice: 2^{j_min} is at most the smallest frequency and 2^{j_max}
    dominates the largest, with one block of margin on either side.
    """
    j_min = math.ceil(math.log2(grid.min_frequency)) - 1
    j_max = math.ceil(math.log2(math.sqrt(grid.dim) * grid.max_frequency)) + 1
    return j_min, j_max


def littlewood_paley_block(f: Field, j: int) -> Field:
    """Delta_j f: the smooth projection onto frequencies ~ 2^j."""
    j_min, j_max = dyadic_range(f.grid)
    if not j_min <= j <= j_max:
        raise SpectralError(f"empty block: j = {j} outside [{j_min}, {j_max}]")
    scale = 2.0**-j
    m = radial_symbol(lambda t: bumps.dyadic_bump(scale * t), zero_mode_rule=0.0)
    return to_field(apply_multiplier(m, to_spectrum(f)))


def low_frequency_projection(f: Field) -> Field:
    """S_0 f: smooth projection onto frequencies below ~ 1."""
    m = radial_symbol(bumps.cutoff_zeta, zero_mode_rule=1.0)
    return to_field(apply_multiplier(m, to_spectrum(f)))


def besov_norm(f: Field, s: float, q: float, p: float,
               homogeneous: bool = True) -> float:
    """Besov norm from dyadic block L^p norms.

    Homogeneous: (sum_j 2^{jsq} ||Delta_j f||_p^q)^{1/q} over the lattice's
    dyadic range.  Inhomogeneous: ||S_0 f||_p + the same sum over j >= 1.
    q = inf takes the sup over blocks.
    """
    if q < 1:
        raise ValueError(f"not a norm: q = {q} < 1")
    j_min, j_max = dyadic_range(f.grid)
    j_lo = j_min if homogeneous else max(j_min, 1)
    terms = []
    for j in range(j_lo, j_max + 1):
        block_norm = lp_norm(littlewood_paley_block(f, j), p)
        terms.append((2.0 ** (j * s)) * block_norm)
    if math.isinf(q):
        dyadic_part = max(terms) if terms else 0.0
    else:
        dyadic_part = float(np.sum(np.array(terms) ** q) ** (1.0 / q))
    if homogeneous:
        return dyadic_part
    return lp_norm(low_frequency_projection(f), p) + dyadic_part


# Intersection norms --------------------------------------------------------


def zhidkov_norm(f: Field, s: float, p: float) -> float:
    """||f||_{L^p} + ||f||_{Hdot^s}."""
    return lp_norm(f, p) + hom_sobolev_norm(f, s)


def zhidkov_band_norm(f: Field, s: float, n_band: float, p: float,
                      grid_points: int = BAND_GRID_POINTS) -> float:
    """sup over alpha in [s, s + n_band] of the Z^alpha_p norm.

    The sup is taken on a uniform alpha-grid; alpha -> ||f||_{Z^alpha_p} is
    smooth for band-limited fields, so a modest grid suffices.
    """
    if n_band <= 0:
        raise ValueError(f"band width must be positive, got {n_band}")
    # One transform; sweep the exponent on the weighted coefficients.
    spec = to_spectrum(f)
    mag = f.grid.frequency_magnitude()
    mag_flat = mag.reshape(-1)
    coeffs2 = np.abs(spec.coeffs.reshape(-1)) ** 2
    nonzero = mag_flat > 0
    lp_part = lp_norm(f, p)
    best = 0.0
    for alpha in np.linspace(s, s + n_band, grid_points):
        hs2 = np.sum(mag_flat[nonzero] ** (2 * alpha) * coeffs2[nonzero])
        value = lp_part + math.sqrt(hs2 * f.grid.volume)
        best = max(best, value)
    return best


# Dispatch for the CLI and harness ------------------------------------------


@dataclass(frozen=True)
class NormKind:
    """A named norm with its parameters, e.g. NormKind("besov", s=1, q=2, p=4)."""

    kind: str
    params: dict[str, Any] = dc_field(default_factory=dict)

    KINDS = ("lp", "hs", "hsr", "ws", "besov", "zhidkov", "zhidkov_band")


def compute_norm(f: Field, kind: NormKind) -> float:
    p = kind.params
    if kind.kind == "lp":
        return lp_norm(f, p["p"])
    if kind.kind == "hs":
        return hom_sobolev_norm(f, p["s"])
    if kind.kind == "hsr":
        return hom_sobolev_lr_norm(f, p["s"], p["r"])
    if kind.kind == "ws":
        return inhom_sobolev_norm(f, p["s"])
    if kind.kind == "besov":
        return besov_norm(f, p["s"], p["q"], p["p"], p.get("homogeneous", True))
    if kind.kind == "zhidkov":
        return zhidkov_norm(f, p["s"], p["p"])
    if kind.kind == "zhidkov_band":
        return zhidkov_band_norm(f, p["s"], p["n"], p["p"])
    raise ValueError(f"unknown norm kind {kind.kind!r}")
