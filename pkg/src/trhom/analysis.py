"""Dip and envelope metrics: FWHM, visibility, center, width ratios.

Visibility is ``(baseline - min) / baseline``, the HOM-dip convention where
the baseline is the uncorrelated (far-from-balance) level.  It is not the
fringe contrast ``(max - min) / (max + min)``; numbers computed either way
are not comparable.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import optimize

from .engine import Interferogram
from .spectral import ComplexSpectrum, DispersionModel, transfer_function
from .whitelight import FringePattern, whitelight_interferogram

BASELINE_FRACTION = 0.1
MIN_SPAN_FWHMS = 5.0
NO_DIP_LEVEL = 0.99


class AnalysisError(ValueError):
    pass


@dataclass(frozen=True)
class DipMetrics:
    fwhm: float
    visibility: float
    center: float
    baseline: float


def _baseline(y, fraction=BASELINE_FRACTION):
    n = max(1, int(round(fraction * y.size)))
    return float(np.mean(np.concatenate([y[:n], y[-n:]])))


def _sorted_xy(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    order = np.argsort(x, kind="stable")
    return x[order], y[order]


def _crossing(x, y, i, j, level):
    # linear interpolation between samples i and j
    if y[j] == y[i]:
        return float(x[i])
    return float(x[i] + (level - y[i]) * (x[j] - x[i]) / (y[j] - y[i]))


def _regions(mask):
    """Contiguous True runs as (start, stop) index pairs, stop exclusive."""
    edges = np.diff(np.concatenate([[0], mask.astype(int), [0]]))
    return list(zip(np.flatnonzero(edges == 1), np.flatnonzero(edges == -1)))


def _half_width(x, y, level, below):
    """Width of the single excursion past ``level`` (below it for dips)."""
    inside = y < level if below else y > level
    regions = _regions(inside)
    if not regions:
        raise AnalysisError("no half-level crossing")
    if len(regions) > 1:
        spans = ", ".join(f"[{x[a]:.6g}, {x[b - 1]:.6g}]" for a, b in regions)
        raise AnalysisError(f"multiple disjoint half-level regions: {spans}")
    a, b = regions[0]
    if a == 0 or b == y.size:
        raise AnalysisError("half-level region touches the edge of the x range")
    left = _crossing(x, y, a - 1, a, level)
    right = _crossing(x, y, b - 1, b, level)
    return left, right


def dip_metrics(curve: Interferogram) -> DipMetrics:
    x, y = _sorted_xy(curve.x_axis, curve.value)
    base = _baseline(y)
    if base <= 0:
        raise AnalysisError(f"baseline must be > 0, got {base}")
    lo = float(y.min())
    if lo >= NO_DIP_LEVEL * base:
        raise AnalysisError("no dip: minimum is not below 0.99 x baseline")
    left, right = _half_width(x, y, 0.5 * (base + lo), below=True)
    fwhm = right - left
    if x[-1] - x[0] < MIN_SPAN_FWHMS * fwhm:
        raise AnalysisError(
            f"x range {x[-1] - x[0]:.6g} is shorter than {MIN_SPAN_FWHMS:g} dip FWHMs "
            f"({MIN_SPAN_FWHMS * fwhm:.6g}); baseline estimate is unreliable"
        )
    return DipMetrics(fwhm, (base - lo) / base, 0.5 * (left + right), base)


def fwhm_of_dip(curve: Interferogram) -> float:
    """Full width at half depth, crossings located by linear interpolation."""
    return dip_metrics(curve).fwhm


def visibility_of_dip(curve: Interferogram) -> float:
    """``(baseline - min) / baseline`` with the outer-10% baseline."""
    y = np.asarray(curve.value, dtype=float)
    base = _baseline(_sorted_xy(curve.x_axis, y)[1])
    if base <= 0:
        raise AnalysisError(f"baseline must be > 0, got {base}")
    return float((base - y.min()) / base)


def fwhm_of_peak(x, y) -> float:
    """Full width at half maximum of a single peak that decays to zero."""
    x, y = _sorted_xy(x, y)
    top = float(y.max())
    if top <= 0:
        raise AnalysisError("no peak")
    left, right = _half_width(x, y, 0.5 * top, below=False)
    return right - left


def envelope_fwhm(pattern: FringePattern) -> float:
    return fwhm_of_peak(pattern.x_axis, pattern.envelope)


def _width(curve):
    if isinstance(curve, FringePattern):
        return envelope_fwhm(curve)
    return fwhm_of_dip(curve)


def width_ratio(hom: Interferogram, reference) -> float:
    """FWHM of ``reference`` over FWHM of the HOM dip.

    ``reference`` is normally the white-light :class:`FringePattern` (its
    envelope width is used); an :class:`Interferogram` is measured as a dip.
    """
    return _width(reference) / fwhm_of_dip(hom)


def broadening_factor(curve_disp, curve_nodisp) -> float:
    """FWHM(dispersed) / FWHM(undispersed), both measured the same way."""
    if type(curve_disp) is not type(curve_nodisp):
        raise TypeError("both curves must be of the same kind")
    return _width(curve_disp) / _width(curve_nodisp)


def phi2_for_broadening(E: ComplexSpectrum, target, x_axis, omega_ref=None, bracket=None, xtol=1e-6):
    """Quadratic phase (fs^2) broadening the white-light envelope by ``target``.

    Bisection on ``phi2 >= 0`` against :func:`whitelight_interferogram`.
    """
    if target <= 1:
        raise ValueError("target broadening must be > 1")
    omega_ref = E.grid.omega_center if omega_ref is None else omega_ref
    ref = envelope_fwhm(whitelight_interferogram(E, transfer_function(DispersionModel((), omega_ref), E.grid), x_axis))

    def excess(phi2):
        H = transfer_function(DispersionModel((0.0, 0.0, phi2), omega_ref), E.grid)
        return envelope_fwhm(whitelight_interferogram(E, H, x_axis)) / ref - target

    if bracket is None:
        hi = 1.0
        while excess(hi) < 0:
            hi *= 2.0
            if hi > 1e12:
                raise AnalysisError("could not bracket the target broadening")
        bracket = (0.0, hi)
    return float(optimize.bisect(excess, *bracket, xtol=xtol))
