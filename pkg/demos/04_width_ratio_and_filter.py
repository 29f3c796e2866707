"""
White-light to HOM width ratio and the SFG filter
=================================================

For a Gaussian pulse the ratio is sqrt(2) whatever the SFG filter, since
the pair amplitude E(W/2 + u) E(W/2 - u) factorizes into a function of W
times a function of u. A flat-top spectrum does not factorize, and there
the filter changes the ratio.
"""
import numpy as np

from trhom import (
    ComplexSpectrum,
    FrequencyGrid,
    SweepConfig,
    fwhm_of_peak,
    integrate_tau,
    interferogram_map,
    make_gaussian_spectrum,
    omega_from_wavelength,
    sigma_from_pulse_fwhm,
    unit_transfer,
    whitelight_interferogram,
    width_ratio,
)

sigma = sigma_from_pulse_fwhm(74.5)
omega0 = omega_from_wavelength(782.0)
grid = FrequencyGrid.for_pulse(omega0, sigma, n_points=512)
x_wl = np.linspace(-300, 300, 1201)
sweep = SweepConfig(-250.0, 250.0, 161, -1400.0, 1400.0, 281)

spectra = {
    "gaussian": make_gaussian_spectrum(grid, omega0, sigma),
    "super-gaussian (order 8)": ComplexSpectrum(grid, np.exp(-0.5 * ((grid.omega - omega0) / sigma) ** 8)),
}
for name, E in spectra.items():
    H = unit_transfer(grid)
    wl = whitelight_interferogram(E, H, x_wl)
    bw = fwhm_of_peak(E.omega, E.power)
    print(f"{name}: power-spectrum FWHM {bw:.4f} rad/fs")
    for label, f in (("delta", 0.0), ("bw/2", bw / 2), ("bw", bw)):
        s = SweepConfig(**{**sweep.__dict__, "filter_fwhm": f})
        r = width_ratio(integrate_tau(interferogram_map(E, H, s, workers=4)), wl)
        print(f"  filter {label:>5}: ratio = {r:.6f}")
print(f"sqrt(2) = {np.sqrt(2):.6f}")
