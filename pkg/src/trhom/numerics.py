"""Quadrature and spectral convolution kernels.

Convolution output lives on the doubled-frequency grid.  For inputs sampled at
``wc + (k - N/2) dw`` the product of samples ``k`` and ``l`` lands at
``2 wc + (k + l - N) dw``, i.e. doubled-grid index ``m = k + l - N/2``.  The
full linear convolution has ``2N - 1`` entries; indices ``N/2 .. 3N/2 - 1``
are kept.
"""
from __future__ import annotations

import enum

import numpy as np
from scipy import integrate as _spi

from .spectral import ComplexSpectrum


class QuadratureRule(enum.Enum):
    TRAPEZOID = "trapezoid"
    SIMPSON = "simpson"


def integrate(samples, rule=QuadratureRule.TRAPEZOID, spacing=1.0, axis=-1):
    """Composite quadrature of uniformly spaced ``samples`` along ``axis``.

    Simpson's rule needs an odd number (>= 3) of samples.
    """
    y = np.asarray(samples)
    n = y.shape[axis]
    rule = QuadratureRule(rule)
    if rule is QuadratureRule.TRAPEZOID:
        if n < 2:
            raise ValueError(f"trapezoid rule needs >= 2 samples, got {n}")
        return _spi.trapezoid(y, dx=spacing, axis=axis)
    if n < 3 or n % 2 == 0:
        raise ValueError(f"Simpson rule needs an odd sample count >= 3, got {n}")
    return _spi.simpson(y, dx=spacing, axis=axis)


def _check_pair(a: ComplexSpectrum, b: ComplexSpectrum):
    if not a.grid.same_as(b.grid):
        raise ValueError("spectra are sampled on different grids")


def fft_convolve(a, b, delta_omega):
    """Linear convolution along the last axis, truncated to the doubled grid.

    ``a`` and ``b`` broadcast against each other; the last axis has length N.
    """
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.shape[-1]
    nfft = 2 * n
    full = np.fft.ifft(np.fft.fft(a, nfft) * np.fft.fft(b, nfft))
    return full[..., n // 2 : n // 2 + n] * delta_omega


def direct_convolve(a, b, delta_omega):
    """O(N**2) reference for :func:`fft_convolve` on 1-D inputs."""
    a = np.asarray(a, dtype=complex)
    b = np.asarray(b, dtype=complex)
    n = a.size
    out = np.empty(n, dtype=complex)
    k = np.arange(n)
    for m in range(n):
        l = m + n // 2 - k
        ok = (l >= 0) & (l < n)
        out[m] = np.sum(a[k[ok]] * b[l[ok]])
    return out * delta_omega


def convolve_spectra(a: ComplexSpectrum, b: ComplexSpectrum, method="fft") -> ComplexSpectrum:
    """``(a * b)(W) = integral dw a(w) b(W - w)`` on the doubled grid."""
    _check_pair(a, b)
    dw = a.grid.delta_omega
    if method == "fft":
        out = fft_convolve(a.samples, b.samples, dw)
    elif method == "direct":
        out = direct_convolve(a.samples, b.samples, dw)
    else:
        raise ValueError(f"unknown method {method!r}")
    return ComplexSpectrum(a.grid.doubled(), out)
