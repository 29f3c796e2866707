"""Finite-dimensional two-photon model of the forward and time-reversed HOM setups.

Single-photon modes are (port, frequency bin) pairs; port 0 is the upper arm
(delay ``x``) and port 1 the lower arm (dispersion).  The same indices label
the detector ports after the beam splitter.  A two-photon state is stored as a
symmetric ``2n x 2n`` tensor ``Psi`` with ``sum |Psi|^2 = 1``; a linear-optics
unitary acts as ``Psi -> U Psi U^T``.

Detection times are the discrete Fourier conjugate of the frequency bins:
time bin ``m`` sits at ``t_m = 2 pi m / (n delta)`` and the bin states
``v_m[j] = exp(i w_j t_m) / sqrt(n)`` form an orthonormal basis, so summing
detection probabilities over all time bins is an exact finite-dimensional
version of integrating over detection time.  Time translation multiplies bin
``j`` by ``exp(i w_j t)``, which commutes with every unitary built here.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy.stats import unitary_group

from .engine import Interferogram, InterferogramMap
from .spectral import C_UM_PER_FS, DispersionModel

UNITARITY_TOL = 1e-10
NORM_TOL = 1e-12
DEFAULT_SEED = 42


@dataclass(frozen=True)
class ModeBasis:
    """``n_modes`` frequency bins ``w0 + (j - (n - 1)/2) delta``, symmetric about ``w0``."""

    n_modes: int = 8
    delta: float = 0.01
    omega0: float = 0.0

    def __post_init__(self):
        if self.n_modes % 2 or not 4 <= self.n_modes <= 32:
            raise ValueError(f"n_modes must be even and in [4, 32], got {self.n_modes}")
        if not self.delta > 0:
            raise ValueError("delta must be > 0")

    @property
    def omega(self):
        j = np.arange(self.n_modes)
        return self.omega0 + (j - (self.n_modes - 1) / 2) * self.delta

    @property
    def detuning(self):
        return self.omega - self.omega0

    def mirror(self, j):
        return self.n_modes - 1 - np.asarray(j)

    @property
    def time_step(self):
        return 2 * np.pi / (self.n_modes * self.delta)

    def time_bin(self, m):
        """Normalised wave packet centered on time bin ``m``."""
        return np.exp(1j * self.omega * m * self.time_step) / np.sqrt(self.n_modes)

    def time_bins(self):
        """Columns are the time-bin states."""
        return np.stack([self.time_bin(m) for m in range(self.n_modes)], axis=1)

    def signed_bin(self, d):
        d = np.asarray(d) % self.n_modes
        return np.where(d < self.n_modes // 2, d, d - self.n_modes)


@dataclass(frozen=True)
class TwoPhotonState:
    """One photon in port 0 (bin ``j``) and one in port 1 (bin ``k``): ``amp[j, k]``."""

    amp: np.ndarray = field(repr=False)

    def __post_init__(self):
        a = np.array(self.amp, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("amp must be a square matrix")
        norm = np.sum(np.abs(a) ** 2)
        if abs(norm - 1.0) > NORM_TOL:
            raise ValueError(f"state is not normalised (sum |amp|^2 = {norm!r})")
        a.setflags(write=False)
        object.__setattr__(self, "amp", a)

    @classmethod
    def normalized(cls, amp):
        amp = np.asarray(amp, dtype=complex)
        return cls(amp / np.linalg.norm(amp))

    @property
    def n_modes(self):
        return self.amp.shape[0]

    def tensor(self):
        n = self.n_modes
        psi = np.zeros((2 * n, 2 * n), dtype=complex)
        psi[:n, n:] = self.amp / np.sqrt(2)
        psi[n:, :n] = self.amp.T / np.sqrt(2)
        return psi

    def shifted(self, basis: ModeBasis, t):
        """Time-translated copy (both photons delayed by ``t``)."""
        w = basis.omega
        return TwoPhotonState(self.amp * np.exp(1j * np.add.outer(w, w) * t))


@dataclass(frozen=True)
class LinearOpticsUnitary:
    matrix: np.ndarray = field(repr=False)

    def __post_init__(self):
        m = np.array(self.matrix, dtype=complex)
        if m.ndim != 2 or m.shape[0] != m.shape[1]:
            raise ValueError("matrix must be square")
        err = np.linalg.norm(m.conj().T @ m - np.eye(m.shape[0]))
        if err > UNITARITY_TOL:
            raise ValueError(f"matrix is not unitary (||U^H U - 1||_F = {err:.3g})")
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    def inverse(self) -> "LinearOpticsUnitary":
        return LinearOpticsUnitary(np.linalg.inv(self.matrix))

    def apply_two_photon(self, psi):
        return self.matrix @ psi @ self.matrix.T


def _as_unitary(U):
    return U if isinstance(U, LinearOpticsUnitary) else LinearOpticsUnitary(U)


def _amplitude(U: LinearOpticsUnitary, initial, final):
    if isinstance(initial, TwoPhotonState):
        evolved = U.apply_two_photon(initial.tensor())
        return np.vdot(final.tensor(), evolved)
    return np.vdot(final, U.matrix @ initial)


def reversal_identity_check(U, i_state, f_state):
    """``(|<f|U|i>|^2, |<i|U^-1|f>|^2)`` for two-photon states or plain vectors."""
    U = _as_unitary(U)
    for s in (i_state, f_state):
        if not isinstance(s, TwoPhotonState) and abs(np.linalg.norm(s) - 1) > NORM_TOL:
            raise ValueError("states must be normalised")
    forward = abs(_amplitude(U, i_state, f_state)) ** 2
    reversed_ = abs(_amplitude(U.inverse(), f_state, i_state)) ** 2
    return float(forward), float(reversed_)


def random_two_photon_state(n_modes, rng):
    amp = rng.normal(size=(n_modes, n_modes)) + 1j * rng.normal(size=(n_modes, n_modes))
    return TwoPhotonState.normalized(amp)


def random_identity_suite(n_instances=100, n_modes=8, seed=DEFAULT_SEED):
    """Largest ``|p_forward - p_reversed|`` over seeded random unitaries and states."""
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(n_instances):
        U = LinearOpticsUnitary(unitary_group.rvs(2 * n_modes, random_state=rng))
        i_state = random_two_photon_state(n_modes, rng)
        f_state = random_two_photon_state(n_modes, rng)
        pf, pr = reversal_identity_check(U, i_state, f_state)
        worst = max(worst, abs(pf - pr))
    return worst


def hom_unitary(basis: ModeBasis, x, dispersion: DispersionModel | None = None) -> LinearOpticsUnitary:
    """Delay ``x`` (um) on port 0, dispersion on port 1, then a 50/50 splitter per bin."""
    n = basis.n_modes
    w = basis.omega
    phase = np.concatenate([w * x / C_UM_PER_FS, np.zeros(n) if dispersion is None else dispersion.phase(w)])
    D = np.diag(np.exp(1j * phase))
    s = 1 / np.sqrt(2)
    I = np.eye(n)
    B = np.block([[s * I, s * I], [s * I, -s * I]])
    return LinearOpticsUnitary(B @ D)


def hom_unitary_factory(basis, dispersion=None):
    return lambda x: hom_unitary(basis, x, dispersion)


def spdc_state(basis: ModeBasis, f) -> TwoPhotonState:
    """Frequency-anticorrelated pair ``amp[j, mirror(j)] = f_j`` (narrow-band pump)."""
    f = np.asarray(f, dtype=complex)
    if f.shape != (basis.n_modes,):
        raise ValueError(f"expected {basis.n_modes} pair amplitudes")
    amp = np.zeros((basis.n_modes, basis.n_modes), dtype=complex)
    j = np.arange(basis.n_modes)
    amp[j, basis.mirror(j)] = f
    return TwoPhotonState.normalized(amp)


def gaussian_pair_amplitudes(basis: ModeBasis, sigma):
    """``f_j = E(w0 + u_j) E(w0 - u_j)`` for the Gaussian ``E`` of width ``sigma``."""
    return np.exp(-basis.detuning**2 / sigma**2)


def detection_state(basis: ModeBasis, upper_bin, lower_bin) -> TwoPhotonState:
    return TwoPhotonState(np.outer(basis.time_bin(upper_bin), basis.time_bin(lower_bin)))


def _detection_amplitudes(basis, psi):
    """<f(a, b)|psi> for every pair of detection time bins (a upper, b lower)."""
    n = basis.n_modes
    V = basis.time_bins()
    return np.sqrt(2) * (V.conj().T @ psi[:n, n:] @ V.conj())


def forward_coincidence(U_of_x, x_axis, initial: TwoPhotonState, basis: ModeBasis) -> Interferogram:
    """Coincidence probability summed over all detection time-bin pairs."""
    if initial.n_modes != basis.n_modes:
        raise ValueError("state and basis dimensions differ")
    x_axis = np.asarray(x_axis, dtype=float)
    psi = initial.tensor()
    P = np.empty(x_axis.size)
    for i, x in enumerate(x_axis):
        U = _as_unitary(U_of_x(x))
        if U.matrix.shape[0] != 2 * basis.n_modes:
            raise ValueError("unitary and basis dimensions differ")
        P[i] = np.sum(np.abs(_detection_amplitudes(basis, U.apply_two_photon(psi))) ** 2)
    return Interferogram(x_axis, P)


def reversed_coincidence(U_of_x, x_axis, pump: TwoPhotonState, basis: ModeBasis):
    """Time-reversed detection probabilities ``P_r(x, tau)`` and their tau-sum.

    For each delay bin ``d`` the input is a photon at time bin ``d`` in port 0
    and one at bin 0 in port 1.  It evolves under ``U(x)^-1`` and is projected
    onto the pump state shifted to every detection time; the squared overlaps
    are summed over detection time only.
    """
    if pump.n_modes != basis.n_modes:
        raise ValueError("state and basis dimensions differ")
    n = basis.n_modes
    x_axis = np.asarray(x_axis, dtype=float)
    targets = [pump.shifted(basis, m * basis.time_step).tensor() for m in range(n)]
    inputs = [detection_state(basis, d, 0).tensor() for d in range(n)]
    order = np.argsort(basis.signed_bin(np.arange(n)), kind="stable")
    Pr = np.empty((x_axis.size, n))
    for i, x in enumerate(x_axis):
        U = _as_unitary(U_of_x(x))
        if U.matrix.shape[0] != 2 * n:
            raise ValueError("unitary and basis dimensions differ")
        Uinv = U.inverse()
        for d, psi in enumerate(inputs):
            out = Uinv.apply_two_photon(psi)
            Pr[i, d] = sum(abs(np.vdot(t, out)) ** 2 for t in targets)
    tau = basis.signed_bin(np.arange(n)) * basis.time_step
    imap = InterferogramMap(x_axis, tau[order], Pr[:, order])
    return imap, Interferogram(x_axis, Pr.sum(axis=1))


def distinguishable_baseline(initial: TwoPhotonState) -> float:
    """Coincidence level far from balance: half the pair probability."""
    return 0.5 * float(np.sum(np.abs(initial.amp) ** 2))
