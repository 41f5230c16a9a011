"""Constructive frequency splittings.

Two closely related decompositions live here:

* ``zhidkov_decompose``: split an L^p-intersect-Hdot^s field into a smooth
  low-frequency part (bounded in every Z^alpha_p over a band of alpha) plus
  a square-integrable high-frequency remainder.

* ``frequency_split``: the quantitative low/high split at cutoff radius
  epsilon used by the globalization loop, with its epsilon-power bookkeeping
  (theta, beta, delta) carried by :class:`TruncationParams`.

Both use the same bump geometry: a smooth radial cutoff chi with chi = 1 on
|xi| <= 1/2 and chi = 0 on |xi| >= 1, so the dilated cutoff chi(|xi|/eps)
is exactly 1 inside radius eps/2 and vanishes beyond eps.  That geometry
makes the low-pass bound

    ||psi||_{Hdot^alpha} <= (2 eps)^{alpha-1} ||u0||_{Hdot^1}   (alpha > 1)

and the high-pass bound ||phi||_{L^2} <= (2/eps) ||u0||_{Hdot^1} provable
on the lattice, not just heuristic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Any

from . import bumps
from .exponents import is_globalizable, truncation_beta, truncation_theta
from .norms import hom_sobolev_norm, l2_norm, lp_norm, zhidkov_band_norm, zhidkov_norm
from .spectral import (
    Field,
    SpectralError,
    apply_multiplier,
    radial_symbol,
    to_field,
    to_spectrum,
)


@dataclass(frozen=True)
class DecompositionResult:
    """A (regular, rough) pair with measured norms of both parts."""

    regular: Field
    rough: Field
    cutoff_radius: float
    report: dict[str, Any]


@dataclass(frozen=True)
class TruncationParams:
    """Cutoff radius and the derived power-of-epsilon exponents.

    delta = epsilon^{8 theta (1 + eta_slack)} is the time-window length;
    the slack realizes the strictly-larger-than-8-theta exponent any fixed
    eta > 0 provides.
    """

    p: float
    epsilon: float
    eta_slack: float
    theta: float
    beta: float
    delta: float
    globalizable: bool

    def __post_init__(self) -> None:
        if not 0.0 < self.epsilon < 1.0:
            raise ValueError(f"epsilon must be in (0, 1), got {self.epsilon}")
        if self.eta_slack <= 0.0:
            raise ValueError(f"eta_slack must be positive, got {self.eta_slack}")


def make_truncation_params(p: float, epsilon: float,
                           eta_slack: float = 0.05) -> TruncationParams:
    """Compute theta, beta, delta for the cutoff at epsilon.

    Valid for 4 < p < 6; the ``globalizable`` flag (beta > 7 theta, checked
    in exact rational arithmetic) is equivalent to p < 9/2.
    """
    if not 4.0 < p < 6.0:
        raise ValueError(f"p must lie in (4, 6), got {p}")
    theta = float(truncation_theta(p))
    beta = float(truncation_beta(p))
    delta = epsilon ** (8.0 * theta * (1.0 + eta_slack))
    return TruncationParams(
        p=p, epsilon=epsilon, eta_slack=eta_slack,
        theta=theta, beta=beta, delta=delta,
        globalizable=is_globalizable(p),
    )


def _low_pass(u0: Field, radius: float, sharp: bool) -> Field:
    profile = bumps.sharp_ball if sharp else bumps.ball_bump
    m = radial_symbol(lambda t: profile(t / radius), zero_mode_rule=1.0)
    return to_field(apply_multiplier(m, to_spectrum(u0)))


def split_at_frequency(u0: Field, radius: float,
                       sharp: bool = False) -> tuple[Field, Field]:
    """Return (low, high) with low + high == u0 on the grid."""
    low = _low_pass(u0, radius, sharp)
    return low, u0 - low


def zhidkov_decompose(g: Field, n_band: int, s: float = 0.5, p: float = 4.0,
                      sharp: bool = False) -> DecompositionResult:
    """Split g at the unit frequency ball.

    The regular part is the convolution with the inverse transform of a
    unit-ball bump; the rough remainder has all its spectral mass outside
    radius 1/2 and lands in H^s.  The report records the band norm of the
    regular part over alpha in [s, s + n_band], the H^s size of the rough
    part, and both ratios against the Z^s_p norm of the input.
    """
    if n_band < 1:
        raise ValueError(f"n_band must be at least 1, got {n_band}")
    regular, rough = split_at_frequency(g, 1.0, sharp)
    input_norm = zhidkov_norm(g, s, p)
    band = zhidkov_band_norm(regular, s, n_band, p)
    rough_hs = math.hypot(l2_norm(rough), hom_sobolev_norm(rough, s))
    report = {
        "s": s, "p": p, "n_band": n_band,
        "input_zsp_norm": input_norm,
        "regular_band_norm": band,
        "rough_hs_norm": rough_hs,
        "regular_ratio": band / input_norm if input_norm > 0 else 0.0,
        "rough_ratio": rough_hs / input_norm if input_norm > 0 else 0.0,
    }
    return DecompositionResult(regular, rough, 1.0, report)


def frequency_split(u0: Field, params: TruncationParams,
                    sharp: bool = False) -> DecompositionResult:
    """Low/high split at radius epsilon with the epsilon-power report.

    The regular part (the low-pass) must resolve at least the first lattice
    shell, so epsilon >= 4 pi / L is required: below that the cutoff's
    identity region |xi| <= eps/2 contains no nonzero frequency.
    """
    eps = params.epsilon
    if eps < 2.0 * u0.grid.min_frequency:
        raise SpectralError(
            f"cutoff below resolution: epsilon = {eps} < 4 pi / L = "
            f"{2.0 * u0.grid.min_frequency}"
        )
    psi, phi = split_at_frequency(u0, eps, sharp)

    from .evolution import NlsParams, energy  # local import; evolution pulls norms

    u0_z1p = zhidkov_norm(u0, 1.0, params.p)
    theta = params.theta
    report: dict[str, Any] = {"epsilon": eps, "p": params.p, "u0_z1p_norm": u0_z1p}
    for alpha in (1.0, 1.5, 2.5):
        value = hom_sobolev_norm(psi, alpha)
        report[f"psi_hdot_{alpha}"] = value
        scale = eps ** (alpha - 1.0) * u0_z1p
        report[f"psi_hdot_{alpha}_ratio"] = value / scale if scale > 0 else 0.0
    phi_l2 = l2_norm(phi)
    phi_l4 = lp_norm(phi, 4.0)
    e_phi = energy(phi, NlsParams(sigma=2.0, lam=-1, dim=u0.grid.dim))
    report["phi_l2"] = phi_l2
    report["phi_l2_scaled"] = phi_l2 * eps / u0_z1p if u0_z1p > 0 else 0.0
    report["phi_l4_scaled"] = phi_l4 * eps**theta
    report["energy_phi"] = e_phi
    report["energy_phi_scaled"] = e_phi * eps ** (4.0 * theta)
    return DecompositionResult(psi, phi, eps, report)
