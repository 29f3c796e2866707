"""Run configuration: INI-style sections, validated before any computation."""
from __future__ import annotations

import configparser
import csv
from dataclasses import dataclass, field, replace
from pathlib import Path

import numpy as np

from .engine import SweepConfig, TermSelection
from .spectral import (
    ComplexSpectrum,
    DispersionModel,
    FrequencyGrid,
    make_gaussian_spectrum,
    make_tabulated_spectrum,
    omega_from_wavelength,
    sigma_from_pulse_fwhm,
    transfer_function,
)

PAPER_PRESET = {
    "pulse": {"center_wavelength_nm": "782", "fwhm_fs": "74.5"},
    "grid": {"n_points": "1024", "span_factor": "16"},
    "dispersion": {"phi": ""},
    "run": {"mode": "cross", "seed": "42"},
}
ENGINES = ("hom", "whitelight")


class ConfigError(ValueError):
    pass


@dataclass(frozen=True)
class PulseConfig:
    center_wavelength_nm: float
    sigma: float | None = None
    spectrum_file: str | None = None

    @property
    def omega0(self):
        return omega_from_wavelength(self.center_wavelength_nm)


@dataclass(frozen=True)
class RunConfig:
    pulse: PulseConfig
    n_points: int = 1024
    span_factor: float = 16.0
    dispersion: tuple = ()
    sweep: SweepConfig | None = None
    mode: TermSelection = TermSelection.CROSS_ONLY
    engines: tuple = ENGINES
    output: str = "out"
    seed: int = 42
    target_broadening: float = 1.8
    compare_phi2: float | None = None
    n_modes: int = 8
    delta_over_sigma: float = 0.4
    n_instances: int = 100
    whitelight_x: tuple = field(default=())

    def grid(self) -> FrequencyGrid:
        return FrequencyGrid.for_pulse(self.pulse.omega0, self.sigma(), self.n_points, self.span_factor)

    def sigma(self) -> float:
        if self.pulse.sigma is not None:
            return self.pulse.sigma
        return _tabulated_sigma(self.pulse.spectrum_file, self.pulse.omega0)

    def spectrum(self) -> ComplexSpectrum:
        g = self.grid()
        if self.pulse.spectrum_file is None:
            return make_gaussian_spectrum(g, self.pulse.omega0, self.sigma())
        w, a, ph = read_spectrum_file(self.pulse.spectrum_file)
        return make_tabulated_spectrum(g, w, a, ph)

    def dispersion_model(self, phi=None) -> DispersionModel:
        return DispersionModel(self.dispersion if phi is None else phi, self.pulse.omega0)

    def transfer(self, phi=None) -> ComplexSpectrum:
        return transfer_function(self.dispersion_model(phi), self.grid())

    def whitelight_axis(self):
        if self.whitelight_x:
            lo, hi, n = self.whitelight_x
            return np.linspace(lo, hi, int(n))
        s = self.sweep
        return np.linspace(s.x_min, s.x_max, s.x_steps)


def read_spectrum_file(path):
    """CSV with header ``omega_rad_fs,amplitude[,phase_rad]``."""
    with open(path, newline="") as fh:
        rows = list(csv.DictReader(fh))
    if not rows or "omega_rad_fs" not in rows[0] or "amplitude" not in rows[0]:
        raise ConfigError(f"{path}: expected columns omega_rad_fs, amplitude[, phase_rad]")
    w = np.array([float(r["omega_rad_fs"]) for r in rows])
    a = np.array([float(r["amplitude"]) for r in rows])
    ph = np.array([float(r["phase_rad"]) for r in rows]) if "phase_rad" in rows[0] else None
    return w, a, ph


def _tabulated_sigma(path, omega0):
    w, a, _ = read_spectrum_file(path)
    p = a**2
    mean = np.sum(p * w) / np.sum(p)
    return float(np.sqrt(2 * np.sum(p * (w - mean) ** 2) / np.sum(p)))


def _get(cp, section, key, conv=float, default=None, required=False):
    if not cp.has_section(section):
        if required:
            raise ConfigError(f"missing section [{section}]")
        return default
    if key not in cp[section] or cp[section][key].strip() == "":
        if required:
            raise ConfigError(f"missing field {section}.{key}")
        return default
    raw = cp[section][key]
    try:
        return conv(raw)
    except ValueError as exc:
        raise ConfigError(f"bad value for {section}.{key}: {raw!r} ({exc})") from None


def _floats(text):
    return tuple(float(t) for t in text.replace(",", " ").split())


def load_config(path=None, preset=None, seed=None) -> RunConfig:
    """Parse an INI file (optionally layered over a preset) into a :class:`RunConfig`."""
    cp = configparser.ConfigParser(inline_comment_prefixes=("#", ";"))
    if preset is not None:
        if preset != "paper":
            raise ConfigError(f"unknown preset {preset!r}")
        cp.read_dict(PAPER_PRESET)
    if path is not None:
        try:
            with open(path) as fh:
                cp.read_file(fh)
        except configparser.Error as exc:
            raise ConfigError(f"cannot parse {path}: {exc}") from None
    elif preset is None:
        raise ConfigError("either a config file or a preset is required")

    try:
        return _build(cp, preset, seed)
    except ConfigError:
        raise
    except ValueError as exc:
        raise ConfigError(str(exc)) from None


def _build(cp, preset, seed):
    lam = _get(cp, "pulse", "center_wavelength_nm", required=True)
    sigma = _get(cp, "pulse", "sigma")
    fwhm = _get(cp, "pulse", "fwhm_fs")
    spectrum_file = _get(cp, "pulse", "spectrum_file", str)
    if sum(v is not None for v in (sigma, fwhm, spectrum_file)) != 1:
        raise ConfigError("pulse needs exactly one of sigma, fwhm_fs, spectrum_file")
    if fwhm is not None:
        sigma = sigma_from_pulse_fwhm(fwhm)
    pulse = PulseConfig(lam, sigma, spectrum_file)
    if pulse.omega0 <= 0:
        raise ConfigError("center wavelength must be > 0")

    cfg = RunConfig(
        pulse=pulse,
        n_points=_get(cp, "grid", "n_points", int, 1024),
        span_factor=_get(cp, "grid", "span_factor", float, 16.0),
        dispersion=_get(cp, "dispersion", "phi", _floats, ()),
        mode=_get(cp, "run", "mode", TermSelection, TermSelection.CROSS_ONLY),
        engines=_get(cp, "run", "engines", lambda s: tuple(e.strip() for e in s.split(",") if e.strip()), ENGINES),
        output=_get(cp, "run", "output", str, "out"),
        seed=_get(cp, "run", "seed", int, 42) if seed is None else int(seed),
        target_broadening=_get(cp, "compare", "target_broadening", float, 1.8),
        compare_phi2=_get(cp, "compare", "phi2", float),
        n_modes=_get(cp, "oracle", "n_modes", int, 8),
        delta_over_sigma=_get(cp, "oracle", "delta_over_sigma", float, 0.4),
        n_instances=_get(cp, "oracle", "n_instances", int, 100),
        whitelight_x=_get(cp, "whitelight", "x_range", _floats, ()),
    )
    for e in cfg.engines:
        if e not in ENGINES:
            raise ConfigError(f"unknown engine {e!r} in run.engines")
    if cfg.whitelight_x and len(cfg.whitelight_x) != 3:
        raise ConfigError("whitelight.x_range needs x_min, x_max, steps")

    sigma = cfg.sigma()
    if cp.has_section("sweep"):
        keys = ("x_min", "x_max", "x_steps", "tau_min", "tau_max")
        vals = {k: _get(cp, "sweep", k, int if k.endswith("steps") else float, required=True) for k in keys}
        sweep = SweepConfig(
            **vals,
            tau_steps=_get(cp, "sweep", "tau_steps", int, 201),
            filter_fwhm=_get(cp, "sweep", "filter_fwhm", float, 0.0),
        )
    elif preset is not None:
        sweep = SweepConfig.for_pulse(sigma)
    else:
        raise ConfigError("missing section [sweep]")
    cfg = replace(cfg, sweep=sweep)

    # build every derived object once so invalid combinations fail here
    E = cfg.spectrum()
    cfg.transfer()
    sweep.validate_for(E)
    return cfg
