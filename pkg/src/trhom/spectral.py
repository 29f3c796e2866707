"""Frequency grids, pulse spectra and dispersion transfer functions.

Units throughout the package: angular frequency in rad/fs, time in fs,
length in um.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

C_UM_PER_FS = 0.299792458

# minimum number of pulse bandwidths the grid span must cover
SPAN_PER_SIGMA = 8.0


@dataclass(frozen=True)
class FrequencyGrid:
    """Uniform angular-frequency axis.

    Sample ``k`` sits at ``omega_center + (k - n_points // 2) * delta_omega``,
    so the center frequency is always a grid node.  When ``sigma_max`` is
    given the span is checked against it and undersampled grids are rejected.
    """

    omega_center: float
    delta_omega: float
    n_points: int
    sigma_max: float | None = None

    def __post_init__(self):
        if not self.delta_omega > 0:
            raise ValueError(f"delta_omega must be > 0, got {self.delta_omega}")
        if self.n_points < 64 or self.n_points % 2:
            raise ValueError(f"n_points must be even and >= 64, got {self.n_points}")
        if self.sigma_max is not None:
            self.check_bandwidth(self.sigma_max)

    @classmethod
    def for_pulse(cls, omega_center, sigma, n_points=1024, span_factor=16.0):
        """Grid of ``n_points`` spanning ``span_factor * sigma``."""
        if span_factor < SPAN_PER_SIGMA:
            raise ValueError(f"span_factor must be >= {SPAN_PER_SIGMA}, got {span_factor}")
        return cls(omega_center, span_factor * sigma / n_points, n_points, sigma_max=sigma)

    @property
    def span(self) -> float:
        return self.n_points * self.delta_omega

    @property
    def omega(self) -> np.ndarray:
        k = np.arange(self.n_points)
        return self.omega_center + (k - self.n_points // 2) * self.delta_omega

    @property
    def center_index(self) -> int:
        return self.n_points // 2

    def check_bandwidth(self, sigma):
        if not sigma > 0:
            raise ValueError(f"sigma must be > 0, got {sigma}")
        if self.span < SPAN_PER_SIGMA * sigma * (1 - 1e-12):
            raise ValueError(
                f"grid span {self.span:.6g} rad/fs is narrower than "
                f"{SPAN_PER_SIGMA:g} x sigma = {SPAN_PER_SIGMA * sigma:.6g} rad/fs"
            )

    def index_of(self, omega):
        """Nearest grid index for ``omega`` (scalar or array)."""
        k = np.rint((np.asarray(omega) - self.omega_center) / self.delta_omega)
        return (k + self.n_points // 2).astype(int)

    def contains(self, omega) -> bool:
        w = self.omega
        return bool(w[0] <= omega <= w[-1])

    def doubled(self) -> "FrequencyGrid":
        """Grid centered at twice the center frequency, same spacing and size."""
        return FrequencyGrid(2 * self.omega_center, self.delta_omega, self.n_points)

    def same_as(self, other: "FrequencyGrid") -> bool:
        return (
            self.n_points == other.n_points
            and np.isclose(self.omega_center, other.omega_center, rtol=0, atol=1e-12)
            and np.isclose(self.delta_omega, other.delta_omega, rtol=1e-12, atol=0)
        )


@dataclass(frozen=True)
class ComplexSpectrum:
    """Complex field samples on a :class:`FrequencyGrid`."""

    grid: FrequencyGrid
    samples: np.ndarray = field(repr=False)

    def __post_init__(self):
        s = np.array(self.samples, dtype=complex)
        if s.shape != (self.grid.n_points,):
            raise ValueError(f"expected {self.grid.n_points} samples, got shape {s.shape}")
        if not np.all(np.isfinite(s)):
            raise ValueError("spectrum contains non-finite samples")
        s.setflags(write=False)
        object.__setattr__(self, "samples", s)

    @property
    def omega(self):
        return self.grid.omega

    @property
    def power(self):
        return np.abs(self.samples) ** 2

    def at(self, omega):
        return self.samples[self.grid.index_of(omega)]


@dataclass(frozen=True)
class DispersionModel:
    """Polynomial spectral phase ``sum_k phi[k] * (omega - omega_ref)**k``.

    ``phi[k]`` carries units of rad fs**k.
    """

    phi: tuple = ()
    omega_ref: float = 0.0

    def __post_init__(self):
        phi = tuple(float(p) for p in self.phi)
        if not all(np.isfinite(phi)):
            raise ValueError("dispersion coefficients must be finite")
        object.__setattr__(self, "phi", phi)

    @classmethod
    def from_terms(cls, omega_ref, **terms):
        """Build from keyword terms, e.g. ``from_terms(w0, phi2=500.0, phi4=1e5)``."""
        orders = {int(k[3:]): v for k, v in terms.items() if k.startswith("phi")}
        if len(orders) != len(terms):
            raise ValueError(f"unrecognised terms {sorted(terms)}")
        phi = [0.0] * (max(orders, default=-1) + 1)
        for k, v in orders.items():
            phi[k] = v
        return cls(tuple(phi), omega_ref)

    def phase(self, omega):
        d = np.asarray(omega, dtype=float) - self.omega_ref
        # Horner evaluation
        out = np.zeros_like(d)
        for c in reversed(self.phi):
            out = out * d + c
        return out

    @property
    def is_even(self) -> bool:
        return all(c == 0 for c in self.phi[1::2])


def make_gaussian_spectrum(grid: FrequencyGrid, omega0: float, sigma: float) -> ComplexSpectrum:
    """Gaussian field spectrum ``exp[-(w - omega0)**2 / (2 sigma**2)]``."""
    if not sigma > 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    if not grid.contains(omega0):
        raise ValueError(f"omega0={omega0} lies outside the grid")
    grid.check_bandwidth(sigma)
    w = grid.omega
    return ComplexSpectrum(grid, np.exp(-((w - omega0) ** 2) / (2 * sigma**2)))


def make_tabulated_spectrum(
    grid: FrequencyGrid,
    omega: Sequence[float],
    amplitude: Sequence[float],
    phase: Sequence[float] | None = None,
) -> ComplexSpectrum:
    """Linearly interpolate a tabulated field spectrum onto ``grid``.

    Samples outside the tabulated range are zero.
    """
    omega = np.asarray(omega, dtype=float)
    amplitude = np.asarray(amplitude, dtype=float)
    if omega.ndim != 1 or omega.shape != amplitude.shape or omega.size < 2:
        raise ValueError("omega and amplitude must be 1-D arrays of equal length >= 2")
    order = np.argsort(omega)
    omega, amplitude = omega[order], amplitude[order]
    w = grid.omega
    amp = np.interp(w, omega, amplitude, left=0.0, right=0.0)
    if phase is not None:
        ph = np.interp(w, omega, np.asarray(phase, dtype=float)[order])
        return ComplexSpectrum(grid, amp * np.exp(1j * ph))
    return ComplexSpectrum(grid, amp)


def transfer_function(model: DispersionModel, grid: FrequencyGrid) -> ComplexSpectrum:
    """Pure-phase transfer function ``H(w) = exp(i phase(w))`` sampled on ``grid``."""
    return ComplexSpectrum(grid, np.exp(1j * model.phase(grid.omega)))


def unit_transfer(grid: FrequencyGrid) -> ComplexSpectrum:
    return ComplexSpectrum(grid, np.ones(grid.n_points))


def sigma_from_pulse_fwhm(fwhm_fs: float) -> float:
    """Spectral width ``sigma`` of a transform-limited Gaussian pulse.

    For ``E(w) = exp[-(w - w0)**2 / (2 sigma**2)]`` the temporal intensity is
    ``exp(-sigma**2 t**2)``, whose FWHM is ``2 sqrt(ln 2) / sigma``.
    """
    if not fwhm_fs > 0:
        raise ValueError("pulse FWHM must be > 0")
    return 2.0 * np.sqrt(np.log(2.0)) / fwhm_fs


def omega_from_wavelength(wavelength_nm: float) -> float:
    """Angular frequency in rad/fs for a vacuum wavelength in nm."""
    if not wavelength_nm > 0:
        raise ValueError("wavelength must be > 0")
    return 2 * np.pi * C_UM_PER_FS / (wavelength_nm * 1e-3)
