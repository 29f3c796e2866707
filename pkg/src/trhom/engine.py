"""Time-reversed HOM interferometer: SFG spectrum, intensity map and S(x).

Two orthogonally polarised copies of a pulse, ``E(w)`` and ``E(w) e^{i w tau}``,
pass a cross-correlator with a delay ``x`` in one arm and a dispersive
element ``H(w)`` in the other.  Type-II SFG mixes one photon from each arm::

    E_sfg(W) ~ int dw' E(w') E(W - w') H(w') e^{i (W - w') x / c}
                       * [e^{i w' tau} - e^{i (W - w') tau}]

A narrow filter at ``2 w0`` gives ``I_r(x, tau) = |E_sfg(2 w0)|**2`` and the
tau-integrated interferogram ``S(x)`` reproduces the HOM dip.
"""
from __future__ import annotations

import enum
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field, replace

import numpy as np

from .numerics import QuadratureRule, fft_convolve, integrate
from .spectral import C_UM_PER_FS, ComplexSpectrum, FrequencyGrid

MIN_TAU_SPAN_SIGMAS = 8.0
FWHM_TO_GAUSS = 4.0 * np.log(2.0)


class TermSelection(enum.Enum):
    """Which Feynman paths reach the detector.

    ``CROSS_ONLY`` models type-II SFG (one photon from each input pulse).
    ``CROSS_PLUS_AUTO`` also lets both SFG photons come from the same pulse,
    adding the bracket ``[e^{i W tau} + 1]`` on the same kernel.  That term is
    a modelling choice, not taken from a published formula.
    """

    CROSS_ONLY = "cross"
    CROSS_PLUS_AUTO = "cross+auto"


@dataclass(frozen=True)
class SweepConfig:
    x_min: float
    x_max: float
    x_steps: int
    tau_min: float
    tau_max: float
    tau_steps: int = 201
    filter_fwhm: float = 0.0

    def __post_init__(self):
        if self.x_steps < 2 or self.tau_steps < 2:
            raise ValueError("x_steps and tau_steps must be >= 2")
        if not self.x_max > self.x_min:
            raise ValueError("x_max must exceed x_min")
        if not self.tau_max > self.tau_min:
            raise ValueError("tau_max must exceed tau_min")
        if self.filter_fwhm < 0:
            raise ValueError("filter_fwhm must be >= 0")

    @classmethod
    def for_pulse(cls, sigma, x_steps=201, tau_steps=201, filter_fwhm=0.0, extra_delay=0.0):
        """Symmetric sweep wide enough for a Gaussian pulse of width ``sigma``.

        The x range spans a little over five dip FWHMs; the tau range covers
        ``x_max / c`` plus 12/sigma, plus ``extra_delay`` fs for dispersive
        spreading.
        """
        fwhm = 2.0 * np.sqrt(2.0 * np.log(2.0)) * C_UM_PER_FS / sigma
        x_half = 2.6 * fwhm
        tau_half = x_half / C_UM_PER_FS + 12.0 / sigma + extra_delay
        return cls(-x_half, x_half, x_steps, -tau_half, tau_half, tau_steps, filter_fwhm)

    def widened(self, extra) -> "SweepConfig":
        """Extend the tau range by ``extra`` fs on each side at the same tau step."""
        if extra <= 0:
            return self
        dt = (self.tau_max - self.tau_min) / (self.tau_steps - 1)
        steps = int(np.ceil((self.tau_max - self.tau_min + 2 * extra) / dt)) + 1
        lo = self.tau_min - extra
        return replace(self, tau_min=lo, tau_max=lo + (steps - 1) * dt, tau_steps=steps)

    @property
    def x_axis(self):
        return np.linspace(self.x_min, self.x_max, self.x_steps)

    @property
    def tau_axis(self):
        return np.linspace(self.tau_min, self.tau_max, self.tau_steps)

    def validate_for(self, spectrum: ComplexSpectrum):
        sigma = spectral_sigma(spectrum)
        span = self.tau_max - self.tau_min
        if span < MIN_TAU_SPAN_SIGMAS / sigma:
            raise ValueError(
                f"tau span {span:.6g} fs is shorter than {MIN_TAU_SPAN_SIGMAS:g}/sigma "
                f"= {MIN_TAU_SPAN_SIGMAS / sigma:.6g} fs"
            )


def _frozen(a):
    a = np.array(a, dtype=float)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class Interferogram:
    x_axis: np.ndarray = field(repr=False)
    value: np.ndarray = field(repr=False)

    def __post_init__(self):
        x, v = _frozen(self.x_axis), _frozen(self.value)
        if x.shape != v.shape or x.ndim != 1:
            raise ValueError("x_axis and value must be 1-D and of equal length")
        if not np.all(np.isfinite(v)):
            raise ValueError("interferogram contains non-finite values")
        object.__setattr__(self, "x_axis", x)
        object.__setattr__(self, "value", v)

    def baseline(self, fraction=0.1):
        """Mean of the outer ``fraction`` of samples on each side."""
        n = max(1, int(round(fraction * self.value.size)))
        return float(np.mean(np.concatenate([self.value[:n], self.value[-n:]])))

    def normalized(self) -> "Interferogram":
        return Interferogram(self.x_axis, self.value / self.baseline())


@dataclass(frozen=True)
class InterferogramMap:
    x_axis: np.ndarray = field(repr=False)
    tau_axis: np.ndarray = field(repr=False)
    intensity: np.ndarray = field(repr=False)

    def __post_init__(self):
        x, t, I = _frozen(self.x_axis), _frozen(self.tau_axis), _frozen(self.intensity)
        if I.shape != (x.size, t.size):
            raise ValueError(f"intensity shape {I.shape} does not match axes ({x.size}, {t.size})")
        if not np.all(np.isfinite(I)) or np.any(I < 0):
            raise ValueError("intensity must be finite and non-negative")
        object.__setattr__(self, "x_axis", x)
        object.__setattr__(self, "tau_axis", t)
        object.__setattr__(self, "intensity", I)


def spectral_sigma(spectrum: ComplexSpectrum) -> float:
    """Gaussian-equivalent width: sqrt(2) x rms width of ``|E|**2``.

    Exact for ``E = exp[-(w - w0)**2 / (2 sigma**2)]``.
    """
    p = spectrum.power
    w = spectrum.omega
    total = p.sum()
    if total <= 0:
        raise ValueError("spectrum has no power")
    mean = (p * w).sum() / total
    return float(np.sqrt(2.0 * (p * (w - mean) ** 2).sum() / total))


def group_delay_extent(E: ComplexSpectrum, model, floor=1e-14) -> float:
    """Largest |d phase / d w| (fs) where ``|E|**2`` exceeds ``floor`` x its peak.

    A sweep whose tau range is widened by this much keeps the dispersed
    pulse overlap inside the window.
    """
    w = E.omega
    keep = E.power >= floor * E.power.max()
    gd = np.gradient(model.phase(w), w)
    return float(np.max(np.abs(gd[keep]))) if np.any(keep) else 0.0


def _check_grids(E: ComplexSpectrum, H: ComplexSpectrum):
    if not E.grid.same_as(H.grid):
        raise ValueError("E and H are sampled on different grids")


def _sfg_fft(e, h, omega, dw, x, tau, selection, swap=False):
    """Vectorised FFT path; ``tau`` may be an array (result has a leading axis)."""
    tau = np.asarray(tau, dtype=float)
    shift = np.exp(1j * np.multiply.outer(tau, omega))
    eh = e * h
    eb = e * np.exp(1j * omega * x / C_UM_PER_FS)
    first = fft_convolve(eh * shift, eb, dw)
    second = fft_convolve(eh, eb * shift, dw)
    out = second - first if swap else first - second
    if selection is TermSelection.CROSS_PLUS_AUTO:
        plain = fft_convolve(eh, eb, dw)
        wc = omega[omega.size // 2]
        W = 2.0 * wc + (omega - wc)
        out = out + plain * (np.exp(1j * np.multiply.outer(tau, W)) + 1.0)
    return out


def _sfg_direct(e, h, omega, dw, x, tau, selection, swap=False):
    n = omega.size
    wc = omega[n // 2]
    W = 2.0 * wc + (omega - wc)
    out = np.empty(n, dtype=complex)
    k = np.arange(n)
    for m in range(n):
        l = m + n // 2 - k
        ok = (l >= 0) & (l < n)
        kk, ll = k[ok], l[ok]
        wp = omega[kk]
        rest = W[m] - wp
        kern = e[kk] * e[ll] * h[kk] * np.exp(1j * rest * x / C_UM_PER_FS)
        if swap:
            bracket = np.exp(1j * rest * tau) - np.exp(1j * wp * tau)
        else:
            bracket = np.exp(1j * wp * tau) - np.exp(1j * rest * tau)
        if selection is TermSelection.CROSS_PLUS_AUTO:
            bracket = bracket + np.exp(1j * W[m] * tau) + 1.0
        out[m] = np.sum(kern * bracket)
    return out * dw


def sfg_spectrum(
    E: ComplexSpectrum,
    H: ComplexSpectrum,
    x: float,
    tau: float,
    selection: TermSelection = TermSelection.CROSS_ONLY,
    method: str = "fft",
    swap: bool = False,
) -> ComplexSpectrum:
    """Sum-frequency field on the doubled grid for delay ``x`` (um) and pulse separation ``tau`` (fs).

    ``method="direct"`` evaluates the double sum term by term and serves as
    the reference for the FFT path.  ``swap=True`` puts the ``tau`` phase on
    the other pulse, which flips the sign of the cross term.
    """
    _check_grids(E, H)
    selection = TermSelection(selection)
    fn = {"fft": _sfg_fft, "direct": _sfg_direct}.get(method)
    if fn is None:
        raise ValueError(f"unknown method {method!r}")
    g = E.grid
    out = fn(E.samples, H.samples, g.omega, g.delta_omega, float(x), float(tau), selection, swap)
    return ComplexSpectrum(g.doubled(), out)


def filter_transmission(grid: FrequencyGrid, filter_fwhm: float, center=None):
    center = grid.omega_center if center is None else center
    return np.exp(-FWHM_TO_GAUSS * (grid.omega - center) ** 2 / filter_fwhm**2)


def _filtered(samples, grid, filter_fwhm, center=None):
    """Filtered intensity for samples with the frequency axis last."""
    if filter_fwhm < 0:
        raise ValueError(f"filter_fwhm must be >= 0, got {filter_fwhm}")
    if filter_fwhm == 0:
        k = grid.center_index if center is None else int(grid.index_of(center))
        return np.abs(samples[..., k]) ** 2
    T = filter_transmission(grid, filter_fwhm, center)
    return integrate(T * np.abs(samples) ** 2, QuadratureRule.TRAPEZOID, grid.delta_omega)


def intensity_at_filter(E_sfg: ComplexSpectrum, filter_fwhm: float = 0.0, center=None) -> float:
    """Detected SFG intensity behind a bandpass filter at ``center`` (default: grid center).

    ``filter_fwhm == 0`` is the ideal narrow filter, ``|E_sfg(center)|**2``;
    otherwise a unit-peak Gaussian transmission of that FWHM (rad/fs) is
    integrated against ``|E_sfg|**2``.
    """
    return float(_filtered(E_sfg.samples, E_sfg.grid, filter_fwhm, center))


def _row(args):
    e, h, omega, dw, x, taus, selection, filter_fwhm = args
    spec = _sfg_fft(e, h, omega, dw, x, taus, selection)
    grid = FrequencyGrid(2 * omega[omega.size // 2], dw, omega.size)
    return _filtered(spec, grid, filter_fwhm)


def interferogram_map(
    E: ComplexSpectrum,
    H: ComplexSpectrum,
    sweep: SweepConfig,
    selection: TermSelection = TermSelection.CROSS_ONLY,
    workers: int = 1,
) -> InterferogramMap:
    """Intensity ``I_r(x, tau)`` over the sweep.

    Rows (fixed x) are the unit of work, so the result does not depend on
    ``workers``.
    """
    _check_grids(E, H)
    sweep.validate_for(E)
    selection = TermSelection(selection)
    g = E.grid
    xs, taus = sweep.x_axis, sweep.tau_axis
    jobs = [
        (E.samples, H.samples, g.omega, g.delta_omega, float(x), taus, selection, sweep.filter_fwhm)
        for x in xs
    ]
    if workers <= 1:
        rows = [_row(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            rows = list(pool.map(_row, jobs, chunksize=max(1, len(jobs) // (4 * workers))))
    # roundoff can leave tiny negatives from the quadrature
    intensity = np.maximum(np.vstack(rows), 0.0)
    return InterferogramMap(xs, taus, intensity)


def integrate_tau(imap: InterferogramMap) -> Interferogram:
    """Trapezoid integral of ``I_r`` over tau for each x."""
    t = imap.tau_axis
    if t.size < 2:
        raise ValueError("need at least 2 tau samples")
    dt = np.diff(t)
    if not np.allclose(dt, dt[0], rtol=1e-9, atol=0):
        raise ValueError("tau axis must be uniform")
    S = integrate(imap.intensity, QuadratureRule.TRAPEZOID, dt[0], axis=1)
    return Interferogram(imap.x_axis, np.maximum(S, 0.0))


def _mirror_pairs(E: ComplexSpectrum, omega0):
    g = E.grid
    c = g.center_index if omega0 is None else int(g.index_of(omega0))
    if omega0 is not None and abs(g.omega[c] - omega0) > 1e-9 * g.delta_omega:
        raise ValueError("asymmetric grid: omega0 is not a grid node")
    half = min(c, g.n_points - 1 - c)
    if half < 1:
        raise ValueError("asymmetric grid: no mirrored samples around omega0")
    j = np.arange(-half, half + 1)
    return c + j, c - j, j * g.delta_omega


def closed_form_S(E: ComplexSpectrum, H: ComplexSpectrum, x_axis, omega0=None) -> Interferogram:
    """``S(x)`` by a single quadrature over the detuning ``u``::

        S(x) = 4 pi [ int du P(u) |H(w0+u)|^2
                      - Re int du P(u) H(w0+u) H*(w0-u) e^{-2 i u x / c} ]

    with ``P(u) = |E(w0+u)|^2 |E(w0-u)|^2``.  The ``4 pi`` prefactor makes the
    result match :func:`integrate_tau` of :func:`interferogram_map` in
    absolute terms.
    """
    _check_grids(E, H)
    up, dn, u = _mirror_pairs(E, omega0)
    e, h = E.samples, H.samples
    P = np.abs(e[up]) ** 2 * np.abs(e[dn]) ** 2
    dw = E.grid.delta_omega
    first = integrate(P * np.abs(h[up]) ** 2, QuadratureRule.TRAPEZOID, dw)
    x = np.asarray(x_axis, dtype=float)
    osc = np.exp(-2j * np.multiply.outer(x, u) / C_UM_PER_FS)
    second = integrate(P * h[up] * np.conj(h[dn]) * osc, QuadratureRule.TRAPEZOID, dw, axis=1)
    S = 4 * np.pi * (first - second.real)
    return Interferogram(x, np.maximum(S, 0.0))


def closed_form_baseline(E: ComplexSpectrum, H: ComplexSpectrum, omega0=None) -> float:
    """Large-|x| limit of :func:`closed_form_S` (the first term alone)."""
    _check_grids(E, H)
    up, dn, _ = _mirror_pairs(E, omega0)
    P = np.abs(E.samples[up]) ** 2 * np.abs(E.samples[dn]) ** 2
    return float(4 * np.pi * integrate(P * np.abs(H.samples[up]) ** 2, spacing=E.grid.delta_omega))
