"""
A discrete-mode quantum oracle
==============================

Two ports, n frequency bins each. Check the reversal identity on random
unitaries, then compare the forward SPDC HOM experiment with the reversed
one summed over time bins.
"""
import numpy as np

from trhom import C_UM_PER_FS, omega_from_wavelength, sigma_from_pulse_fwhm
from trhom import quantum

sigma = sigma_from_pulse_fwhm(74.5)
omega0 = omega_from_wavelength(782.0)

dev = quantum.random_identity_suite(n_instances=100, n_modes=8, seed=42)
print(f"reversal identity, worst deviation over 100 unitaries: {dev:.2e}")

basis = quantum.ModeBasis(n_modes=8, delta=0.4 * sigma, omega0=omega0)
pump = quantum.spdc_state(basis, quantum.gaussian_pair_amplitudes(basis, sigma))
U = quantum.hom_unitary_factory(basis)

# one quarter of the mode-comb period on either side
x = np.linspace(-1, 1, 41) * np.pi * C_UM_PER_FS / (2 * basis.delta)
forward = quantum.forward_coincidence(U, x, pump, basis)
tau_map, reversed_sum = quantum.reversed_coincidence(U, x, pump, basis)
print(f"reversed map: {tau_map.intensity.shape[1]} time bins")
print("max |forward - reversed| =", np.max(np.abs(forward.value - reversed_sum.value)))
print("distinguishable baseline:", quantum.distinguishable_baseline(pump))

for xi, p in zip(x[::4], forward.value[::4]):
    print(f"{xi:8.1f} um  P = {p:.4f}")
