"""Canonical initial-data families.

The power-law-tail family is the workhorse: its modulus decays like
``(1 + r^2)^{-gamma/2}`` with ``r`` a smooth periodic distance to the box
center, so on an L-sweep its L^2 norm grows like L^{d/2 - gamma} while its
L^p and Hdot^1 norms stay essentially flat.  That is the desk-scale shape
of data with finite L^p tails but infinite mass.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .fieldio import read_zfld
from .spectral import Field, Grid


def periodic_radius_squared(grid: Grid) -> np.ndarray:
    """Squared distance to the box center, smooth across the periodic seam.

    Uses the chordal coordinate (L/pi) sin(pi (x - c)/L) per axis, which
    agrees with x - c near the center and is C-infinity periodic.
    """
    L = grid.box_length
    center = L / 2.0
    mesh = grid.coordinate_mesh()
    r2 = np.zeros(grid.shape)
    for x in mesh:
        chord = (L / np.pi) * np.sin(np.pi * (x - center) / L)
        r2 += chord**2
    return r2


def min_image_radius_squared(grid: Grid) -> np.ndarray:
    """Squared minimum-image distance to the box center.

    Has a derivative kink at the seam, which only matters for profiles that
    are not already negligible there (the Gaussian is).
    """
    L = grid.box_length
    center = L / 2.0
    mesh = grid.coordinate_mesh()
    r2 = np.zeros(grid.shape)
    for x in mesh:
        d = np.abs(x - center)
        d = np.minimum(d, L - d)
        r2 += d**2
    return r2


@dataclass(frozen=True)
class Gaussian:
    width: float = 1.0
    amplitude: float = 1.0

    def profile(self, grid: Grid) -> np.ndarray:
        r2 = min_image_radius_squared(grid)
        return self.amplitude * np.exp(-r2 / (2.0 * self.width**2))


@dataclass(frozen=True)
class PureMode:
    k: tuple[int, ...] | int = 1
    amplitude: complex = 1.0

    def profile(self, grid: Grid) -> np.ndarray:
        k = (self.k,) + (0,) * (grid.dim - 1) if isinstance(self.k, int) else self.k
        if len(k) != grid.dim:
            raise ValueError(f"mode index {k} does not match dimension {grid.dim}")
        mesh = grid.coordinate_mesh()
        phase = np.zeros(grid.shape)
        for ki, x in zip(k, mesh):
            phase = phase + (2.0 * np.pi * ki / grid.box_length) * x
        return self.amplitude * np.exp(1j * phase)


@dataclass(frozen=True)
class PowerTail:
    gamma: float
    core_width: float = 1.0
    amplitude: float = 1.0

    def profile(self, grid: Grid) -> np.ndarray:
        if not 0.0 < self.gamma <= grid.dim / 2.0:
            raise ValueError(
                f"gamma = {self.gamma} outside (0, d/2] for d = {grid.dim}"
            )
        r2 = periodic_radius_squared(grid)
        return self.amplitude * (1.0 + r2 / self.core_width**2) ** (-self.gamma / 2.0)


@dataclass(frozen=True)
class Custom:
    path: str

    def load(self) -> Field:
        return read_zfld(Path(self.path))


Profile = Gaussian | PureMode | PowerTail | Custom


@dataclass(frozen=True)
class DataFamily:
    kind: Profile
    grid: Grid


def power_tail_window(dim: int, p: float) -> tuple[float, float]:
    """Admissible gamma range (d/p, d/2] so the profile is L^p but not L^2."""
    return dim / p, dim / 2.0


def synthesize(family: DataFamily) -> Field:
    """Deterministic field for the family on its grid."""
    if isinstance(family.kind, Custom):
        f = family.kind.load()
        if f.grid != family.grid:
            raise ValueError(f"file grid {f.grid} does not match requested {family.grid}")
        return f
    return Field(family.grid, family.kind.profile(family.grid))


def randomize_phase(f: Field, seed: int) -> Field:
    """Multiply each Fourier mode by a unit phase from a seeded generator."""
    rng = np.random.default_rng(seed)
    import scipy.fft

    coeffs = scipy.fft.fftn(f.values, workers=-1)
    phases = np.exp(2j * np.pi * rng.random(f.grid.shape))
    return Field(f.grid, scipy.fft.ifftn(coeffs * phases, workers=-1))
