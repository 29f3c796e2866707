import numpy as np
import pytest

from trhom.spectral import (
    FrequencyGrid,
    make_gaussian_spectrum,
    omega_from_wavelength,
    sigma_from_pulse_fwhm,
    unit_transfer,
)

ACCEPTANCE_LINES = []


@pytest.fixture(scope="session")
def sigma():
    return sigma_from_pulse_fwhm(74.5)


@pytest.fixture(scope="session")
def omega0():
    return omega_from_wavelength(782.0)


@pytest.fixture(scope="session")
def grid(omega0, sigma):
    return FrequencyGrid.for_pulse(omega0, sigma, n_points=1024, span_factor=16.0)


@pytest.fixture(scope="session")
def small_grid(omega0, sigma):
    return FrequencyGrid.for_pulse(omega0, sigma, n_points=256, span_factor=16.0)


@pytest.fixture(scope="session")
def E(grid, omega0, sigma):
    return make_gaussian_spectrum(grid, omega0, sigma)


@pytest.fixture(scope="session")
def H1(grid):
    return unit_transfer(grid)


@pytest.fixture
def rng():
    return np.random.default_rng(42)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
