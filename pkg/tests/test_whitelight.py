import numpy as np
import pytest
from scipy import integrate as spi

from trhom.analysis import broadening_factor, envelope_fwhm
from trhom.spectral import C_UM_PER_FS, DispersionModel, transfer_function
from trhom.whitelight import chirped_envelope_broadening, whitelight_interferogram


def test_constructive_peak(E, H1):
    fp = whitelight_interferogram(E, H1, [0.0])
    total = spi.trapezoid(E.power, dx=E.grid.delta_omega)
    assert fp.intensity[0] == pytest.approx(total, rel=1e-12)
    assert fp.intensity[0] == pytest.approx(2 * fp.baseline, rel=1e-12)


def test_far_delay_reaches_baseline(E, H1, sigma):
    far = 20 * C_UM_PER_FS / sigma
    fp = whitelight_interferogram(E, H1, np.linspace(far, far + 2.0, 41))
    assert np.max(np.abs(fp.intensity / fp.baseline - 1)) < 1e-3


def test_gaussian_envelope(E, H1, sigma, omega0):
    x = np.linspace(-150, 150, 3001)
    fp = whitelight_interferogram(E, H1, x)
    analytic = fp.baseline * np.exp(-(sigma * x / C_UM_PER_FS) ** 2 / 4)
    assert np.max(np.abs(fp.envelope - analytic)) < 1e-9 * fp.baseline
    # independent quadrature of the defining integral at a few delays
    for xi in (0.0, 13.0, 40.0):
        re, _ = spi.quad(lambda w: np.exp(-(w - omega0) ** 2 / sigma**2) * np.cos(w * xi / C_UM_PER_FS) / 2,
                         omega0 - 12 * sigma, omega0 + 12 * sigma, epsabs=0, epsrel=1e-12, limit=500)
        im, _ = spi.quad(lambda w: np.exp(-(w - omega0) ** 2 / sigma**2) * np.sin(w * xi / C_UM_PER_FS) / 2,
                         omega0 - 12 * sigma, omega0 + 12 * sigma, epsabs=0, epsrel=1e-12, limit=500)
        got = whitelight_interferogram(E, H1, [xi]).envelope[0]
        assert got == pytest.approx(np.hypot(re, im), rel=1e-8)
    assert envelope_fwhm(fp) == pytest.approx(4 * C_UM_PER_FS / sigma * np.sqrt(np.log(2)), rel=5e-3)


def test_intensity_bounds_and_envelope(E, grid, omega0):
    H = transfer_function(DispersionModel((0.4, 20.0, 1500.0, 4e3), omega0), grid)
    x = np.linspace(-80, 80, 2001)
    fp = whitelight_interferogram(E, H, x)
    assert np.all(fp.intensity >= 0)
    assert np.all(fp.intensity <= 2 * fp.baseline * (1 + 1e-9))
    assert np.all(fp.envelope >= np.abs(fp.intensity - fp.baseline) - 1e-12 * fp.baseline)


def test_envelope_even_for_even_phase(E, grid, omega0):
    H = transfer_function(DispersionModel.from_terms(omega0, phi2=-1200.0, phi4=2e4), grid)
    x = np.linspace(-100, 100, 401)
    env = whitelight_interferogram(E, H, x).envelope
    assert np.max(np.abs(env - env[::-1])) < 1e-9 * env.max()


def test_chirped_broadening(E, H1, grid, omega0, sigma):
    phi2 = 2500.0
    k = chirped_envelope_broadening(sigma, phi2)
    b = 1 + (phi2 * sigma**2) ** 2
    # quadrature oracle for the chirped envelope at one delay
    xi = 30.0
    f = lambda w, part: np.exp(-(w - omega0) ** 2 / sigma**2) / 2 * part(
        phi2 * (w - omega0) ** 2 + w * xi / C_UM_PER_FS)
    re, _ = spi.quad(f, omega0 - 12 * sigma, omega0 + 12 * sigma, args=(np.cos,), epsrel=1e-12, limit=500)
    im, _ = spi.quad(f, omega0 - 12 * sigma, omega0 + 12 * sigma, args=(np.sin,), epsrel=1e-12, limit=500)
    base = sigma * np.sqrt(np.pi) / 2
    analytic = base * b**-0.25 * np.exp(-(xi * sigma / C_UM_PER_FS) ** 2 / (4 * b))
    assert np.hypot(re, im) == pytest.approx(analytic, rel=1e-8)

    x = np.linspace(-250, 250, 2001)
    ref = whitelight_interferogram(E, H1, x)
    widths = []
    for p in (0.0, 800.0, phi2):
        H = transfer_function(DispersionModel((0.0, 0.0, p), omega0), grid)
        widths.append(envelope_fwhm(whitelight_interferogram(E, H, x)))
    assert widths[0] < widths[1] < widths[2]
    H = transfer_function(DispersionModel((0.0, 0.0, phi2), omega0), grid)
    assert broadening_factor(whitelight_interferogram(E, H, x), ref) == pytest.approx(k, rel=1e-2)


def test_grid_mismatch(E, omega0, sigma):
    from trhom.spectral import FrequencyGrid

    other = FrequencyGrid.for_pulse(omega0, sigma, 512)
    with pytest.raises(ValueError):
        whitelight_interferogram(E, transfer_function(DispersionModel(), other), [0.0])
