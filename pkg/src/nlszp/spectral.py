"""Periodic grids, discrete Fourier transforms and Fourier multipliers.

Everything else in the library sits on top of the three value types defined
here: a :class:`Grid` describing a periodic box ``[0, L)^d``, a
:class:`Field` of complex samples on that grid, and a :class:`Spectrum` of
trigonometric-interpolation coefficients.  The forward transform carries the
``1/n^d`` factor, so a coefficient ``c_k`` multiplies ``exp(i xi_k . x)``
with ``xi_k = 2 pi k / L`` and the discrete Parseval identity reads

    sum_k |c_k|^2 * L^d  ==  integral |f|^2 dx  (trapezoid quadrature).

All types are immutable after construction and every operation is pure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable

import numpy as np
import scipy.fft


class SpectralError(ValueError):
    """Raised on invalid fields, grids or multiplier symbols."""


@dataclass(frozen=True)
class Grid:
    """Uniform periodic grid on ``[0, L)^dim`` with ``n`` points per axis.

    ``n`` must be even (and at least 8) so the frequency lattice is the
    symmetric set k in {-n/2, ..., n/2 - 1}; powers of two give the fastest
    transforms but highly composite n (48, 96, ...) works equally well.
    """

    dim: int
    n: int
    box_length: float

    def __post_init__(self) -> None:
        if not 1 <= self.dim <= 3:
            raise SpectralError(f"dim must be 1, 2 or 3, got {self.dim}")
        if self.n < 8 or self.n % 2 != 0:
            raise SpectralError(f"n must be even and >= 8, got {self.n}")
        if not (self.box_length > 0 and np.isfinite(self.box_length)):
            raise SpectralError(f"box_length must be positive, got {self.box_length}")

    @property
    def spacing(self) -> float:
        return self.box_length / self.n

    @property
    def shape(self) -> tuple[int, ...]:
        return (self.n,) * self.dim

    @property
    def num_points(self) -> int:
        return self.n**self.dim

    @property
    def cell_volume(self) -> float:
        return self.spacing**self.dim

    @property
    def volume(self) -> float:
        return self.box_length**self.dim

    def axis_frequencies(self) -> np.ndarray:
        """1-D frequency lattice xi_k = 2 pi k / L in FFT storage order."""
        return 2.0 * np.pi * np.fft.fftfreq(self.n, d=self.spacing)

    def frequency_mesh(self) -> tuple[np.ndarray, ...]:
        """Per-axis frequency arrays broadcast over the full lattice."""
        k = self.axis_frequencies()
        return tuple(np.meshgrid(*([k] * self.dim), indexing="ij"))

    def frequency_magnitude(self) -> np.ndarray:
        """|xi| on the full lattice."""
        mesh = self.frequency_mesh()
        return np.sqrt(sum(x**2 for x in mesh))

    def frequency_magnitude_squared(self) -> np.ndarray:
        mesh = self.frequency_mesh()
        return sum(x**2 for x in mesh)

    def axis_coordinates(self) -> np.ndarray:
        return np.arange(self.n) * self.spacing

    def coordinate_mesh(self) -> tuple[np.ndarray, ...]:
        x = self.axis_coordinates()
        return tuple(np.meshgrid(*([x] * self.dim), indexing="ij"))

    @property
    def max_frequency(self) -> float:
        """Nyquist frequency per axis, pi * n / L."""
        return np.pi * self.n / self.box_length

    @property
    def min_frequency(self) -> float:
        """Smallest nonzero frequency, 2 pi / L."""
        return 2.0 * np.pi / self.box_length


@dataclass(frozen=True)
class Field:
    """Complex samples on a :class:`Grid`, row-major over the axes."""

    grid: Grid
    values: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        values = np.asarray(self.values, dtype=np.complex128)
        if values.size != self.grid.num_points:
            raise SpectralError(
                f"field has {values.size} values, grid wants {self.grid.num_points}"
            )
        values = values.reshape(self.grid.shape)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)
        if not np.all(np.isfinite(values.view(np.float64))):
            raise SpectralError("non-finite field")

    def __add__(self, other: "Field") -> "Field":
        _check_same_grid(self.grid, other.grid)
        return Field(self.grid, self.values + other.values)

    def __sub__(self, other: "Field") -> "Field":
        _check_same_grid(self.grid, other.grid)
        return Field(self.grid, self.values - other.values)

    def __mul__(self, scalar: complex) -> "Field":
        return Field(self.grid, self.values * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Spectrum:
    """Interpolation coefficients on the frequency lattice (FFT order)."""

    grid: Grid
    coeffs: np.ndarray = field(repr=False)

    def __post_init__(self) -> None:
        coeffs = np.asarray(self.coeffs, dtype=np.complex128)
        if coeffs.size != self.grid.num_points:
            raise SpectralError(
                f"spectrum has {coeffs.size} coefficients, grid wants {self.grid.num_points}"
            )
        coeffs = coeffs.reshape(self.grid.shape)
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def __add__(self, other: "Spectrum") -> "Spectrum":
        _check_same_grid(self.grid, other.grid)
        return Spectrum(self.grid, self.coeffs + other.coeffs)

    def __sub__(self, other: "Spectrum") -> "Spectrum":
        _check_same_grid(self.grid, other.grid)
        return Spectrum(self.grid, self.coeffs - other.coeffs)

    def __mul__(self, scalar: complex) -> "Spectrum":
        return Spectrum(self.grid, self.coeffs * scalar)

    __rmul__ = __mul__


@dataclass(frozen=True)
class Multiplier:
    """A Fourier multiplier: a symbol evaluated on the frequency lattice.

    ``symbol`` receives the per-axis frequency arrays (one per dimension,
    each broadcast over the lattice) and returns the symbol values.  The
    value at the zero mode is always overridden by ``zero_mode_rule``; this
    is how homogeneous symbols like ``|xi|^s`` with ``s < 0`` stay finite
    (the quotient-by-constants convention).
    """

    symbol: Callable[..., np.ndarray]
    zero_mode_rule: complex = 0.0

    def evaluate(self, grid: Grid) -> np.ndarray:
        mesh = grid.frequency_mesh()
        with np.errstate(divide="ignore", invalid="ignore"):
            values = np.asarray(self.symbol(*mesh), dtype=np.complex128)
        values = np.broadcast_to(values, grid.shape).copy()
        zero = (0,) * grid.dim
        values[zero] = self.zero_mode_rule
        if not np.all(np.isfinite(values.view(np.float64))):
            raise SpectralError("singular multiplier")
        return values


def _check_same_grid(a: Grid, b: Grid) -> None:
    if a != b:
        raise SpectralError(f"grid mismatch: {a} vs {b}")


def to_spectrum(f: Field) -> Spectrum:
    """Forward transform; coefficients carry the 1/n^dim normalization."""
    coeffs = scipy.fft.fftn(f.values, workers=-1) / f.grid.num_points
    return Spectrum(f.grid, coeffs)


def to_field(s: Spectrum) -> Field:
    """Inverse transform back to physical samples."""
    values = scipy.fft.ifftn(s.coeffs * s.grid.num_points, workers=-1)
    return Field(s.grid, values)


def apply_multiplier(m: Multiplier, s: Spectrum) -> Spectrum:
    """Pointwise product of the symbol with the coefficients."""
    return Spectrum(s.grid, m.evaluate(s.grid) * s.coeffs)


def apply_multiplier_field(m: Multiplier, f: Field) -> Field:
    """Convenience: transform, multiply, transform back."""
    return to_field(apply_multiplier(m, to_spectrum(f)))


def dealias(s: Spectrum, fraction: float = 2.0 / 3.0) -> Spectrum:
    """Zero every coefficient with some |k_i| > fraction * n/2.

    The default 2/3 fraction removes aliasing from a cubic nonlinearity.
    A projection: applying it twice equals applying it once.
    """
    if not 0.0 < fraction <= 1.0:
        raise SpectralError(f"dealias fraction must be in (0, 1], got {fraction}")
    n = s.grid.n
    k = np.fft.fftfreq(n, d=1.0 / n)  # integer wavenumbers -n/2 .. n/2-1
    keep_axis = np.abs(k) <= fraction * (n / 2)
    mask = np.ones(s.grid.shape, dtype=bool)
    for axis in range(s.grid.dim):
        shape = [1] * s.grid.dim
        shape[axis] = n
        mask &= keep_axis.reshape(shape)
    return Spectrum(s.grid, np.where(mask, s.coeffs, 0.0))


# Common symbols ------------------------------------------------------------


def fractional_power_symbol(s: float) -> Multiplier:
    """|xi|^s with the zero mode killed (homogeneous Sobolev convention)."""

    def symbol(*mesh: np.ndarray) -> np.ndarray:
        mag2 = sum(x**2 for x in mesh)
        return np.power(mag2, s / 2.0)

    return Multiplier(symbol, zero_mode_rule=0.0)


def bessel_power_symbol(s: float) -> Multiplier:
    """(1 + |xi|^2)^{s/2}, the inhomogeneous Sobolev weight."""

    def symbol(*mesh: np.ndarray) -> np.ndarray:
        mag2 = sum(x**2 for x in mesh)
        return np.power(1.0 + mag2, s / 2.0)

    return Multiplier(symbol, zero_mode_rule=1.0)


def free_propagator_symbol(t: float) -> Multiplier:
    """exp(-i t |xi|^2): the linear Schrodinger group in Fourier space."""

    def symbol(*mesh: np.ndarray) -> np.ndarray:
        mag2 = sum(x**2 for x in mesh)
        return np.exp(-1j * t * mag2)

    return Multiplier(symbol, zero_mode_rule=1.0)


def radial_symbol(profile: Callable[[np.ndarray], np.ndarray],
                  zero_mode_rule: complex | None = None) -> Multiplier:
    """Multiplier m(xi) = profile(|xi|).

    If ``zero_mode_rule`` is omitted it is taken as ``profile(0)``.
    """
    if zero_mode_rule is None:
        zero_mode_rule = complex(np.asarray(profile(np.array([0.0])))[0])

    def symbol(*mesh: np.ndarray) -> np.ndarray:
        mag = np.sqrt(sum(x**2 for x in mesh))
        return profile(mag)

    return Multiplier(symbol, zero_mode_rule=zero_mode_rule)
