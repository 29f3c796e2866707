"""Spectral-domain simulation of the time-reversed Hong-Ou-Mandel interferometer."""
from .spectral import (
    C_UM_PER_FS,
    ComplexSpectrum,
    DispersionModel,
    FrequencyGrid,
    make_gaussian_spectrum,
    make_tabulated_spectrum,
    omega_from_wavelength,
    sigma_from_pulse_fwhm,
    transfer_function,
    unit_transfer,
)
from .numerics import QuadratureRule, convolve_spectra, integrate
from .engine import (
    Interferogram,
    InterferogramMap,
    SweepConfig,
    TermSelection,
    closed_form_S,
    group_delay_extent,
    integrate_tau,
    intensity_at_filter,
    interferogram_map,
    sfg_spectrum,
)
from .whitelight import FringePattern, chirped_envelope_broadening, whitelight_interferogram
from .analysis import (
    DipMetrics,
    broadening_factor,
    dip_metrics,
    fwhm_of_dip,
    fwhm_of_peak,
    phi2_for_broadening,
    visibility_of_dip,
    width_ratio,
)
from . import quantum

__version__ = "0.1.0"
