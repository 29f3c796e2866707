"""Balanced Mach-Zehnder (white-light) interferometer with the same source.

One arm carries the delay ``x``, the other the dispersive element ``H``.
Ideal 50/50 splitters, loss-free arms.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .numerics import QuadratureRule, integrate
from .spectral import C_UM_PER_FS, ComplexSpectrum


@dataclass(frozen=True)
class FringePattern:
    x_axis: np.ndarray = field(repr=False)
    intensity: np.ndarray = field(repr=False)
    envelope: np.ndarray = field(repr=False)
    baseline: float = 0.0

    def __post_init__(self):
        arrs = [np.array(a, dtype=float) for a in (self.x_axis, self.intensity, self.envelope)]
        if not (arrs[0].shape == arrs[1].shape == arrs[2].shape) or arrs[0].ndim != 1:
            raise ValueError("x_axis, intensity and envelope must be 1-D and of equal length")
        for name, a in zip(("x_axis", "intensity", "envelope"), arrs):
            if not np.all(np.isfinite(a)):
                raise ValueError(f"{name} contains non-finite values")
            a.setflags(write=False)
            object.__setattr__(self, name, a)


def whitelight_interferogram(E: ComplexSpectrum, H: ComplexSpectrum, x_axis) -> FringePattern:
    """Fringe intensity and envelope versus arm delay ``x`` (um).

    ``intensity(x) = int |E|^2 |1 + H e^{i w x/c}|^2 / 4`` and
    ``envelope(x) = |int |E|^2 H e^{i w x/c} / 2|``; both by trapezoid.
    """
    if not E.grid.same_as(H.grid):
        raise ValueError("E and H are sampled on different grids")
    x = np.asarray(x_axis, dtype=float)
    w = E.omega
    dw = E.grid.delta_omega
    p = E.power
    phase = np.exp(1j * np.multiply.outer(x, w) / C_UM_PER_FS)
    field_sum = 1.0 + H.samples * phase
    intensity = integrate(p * np.abs(field_sum) ** 2 / 4, QuadratureRule.TRAPEZOID, dw, axis=1)
    gamma = integrate(p * H.samples * phase / 2, QuadratureRule.TRAPEZOID, dw, axis=1)
    baseline = float(integrate(p / 2, QuadratureRule.TRAPEZOID, dw))
    return FringePattern(x, np.maximum(intensity, 0.0), np.abs(gamma), baseline)


def chirped_envelope_broadening(sigma, phi2):
    """Envelope width ratio for a Gaussian spectrum with quadratic phase ``phi2``.

    ``|E|^2 = exp[-(w - w0)^2 / sigma^2]`` gives an envelope of width
    proportional to ``sqrt(1 + phi2**2 sigma**4)`` relative to ``phi2 = 0``.
    """
    return float(np.sqrt(1.0 + (phi2 * sigma**2) ** 2))
