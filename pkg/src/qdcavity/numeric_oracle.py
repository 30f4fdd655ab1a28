"""Independent numerical propagation of the coherent amplitudes.

Two checks live here:

* lossless dynamics: for a quadratic Hamiltonian H = sum_ij h_ij b_i^+ b_j a
  product of coherent states stays coherent with amplitudes exp(-i h t) alpha(0);
* dissipative dynamics: the cavity + collective exciton mode coupled to a
  finite, flat band of bath modes, integrated with fixed-step RK4 and
  compared to the Wigner-Weisskopf coefficients.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DomainError, HorizonError
from .model import AmplitudeSet, DecayConfig, SystemConfig


@dataclass(frozen=True)
class CouplingMatrix:
    """Single-excitation Hamiltonian: omega on the diagonal, g_n in row/column 0."""

    entries: np.ndarray

    @classmethod
    def from_config(cls, cfg: SystemConfig) -> "CouplingMatrix":
        dim = cfg.n_modes
        h = np.eye(dim) * cfg.omega
        h[0, 1:] = cfg.couplings
        h[1:, 0] = cfg.couplings
        return cls(h)

    @property
    def dimension(self) -> int:
        return self.entries.shape[0]


def evolve_amplitudes_numeric(cfg: SystemConfig, t) -> AmplitudeSet:
    """alpha(t) = exp(-i h t) (alpha, 0, ..., 0) via the real spectral decomposition of h."""
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("t must be nonnegative")
    h = CouplingMatrix.from_config(cfg).entries
    w, v = np.linalg.eigh(h)
    start = np.zeros(h.shape[0], dtype=complex)
    start[0] = cfg.alpha
    coeff = v.T @ start
    phases = np.exp(-1j * t[..., None] * w)
    amps = (phases * coeff) @ v.T
    return AmplitudeSet(t, amps)


@dataclass(frozen=True)
class BathDiscretization:
    """K bath modes spread uniformly over [omega - W, omega + W] (endpoints included).

    Couplings are lambda_k = sqrt(gamma * dw / (2 pi)) with dw = 2W / K, a flat
    spectral density epsilon * lambda^2 = gamma / (2 pi).
    """

    k_modes: int
    band_halfwidth: float
    frequencies: np.ndarray
    couplings: np.ndarray
    omega: float = 0.0

    @classmethod
    def flat(cls, gamma: float, k_modes: int, band_halfwidth: float, omega: float = 0.0):
        if k_modes < 1 or not band_halfwidth > 0:
            raise DomainError("need k_modes >= 1 and a positive band half-width")
        dw = 2.0 * band_halfwidth / k_modes
        freqs = omega + np.linspace(-band_halfwidth, band_halfwidth, k_modes)
        lam = np.full(k_modes, np.sqrt(gamma * dw / (2.0 * np.pi)))
        return cls(k_modes, band_halfwidth, freqs, lam, omega)

    @property
    def horizon(self) -> float:
        """Latest time trusted before the discrete band revives."""
        return self.k_modes * np.pi / (2.0 * self.band_halfwidth)


@dataclass(frozen=True)
class BathTrajectory:
    times: np.ndarray
    u: np.ndarray
    v: np.ndarray
    max_norm_error: float


def _max_step(dc: DecayConfig, bath: BathDiscretization) -> float:
    return 1.0 / (50.0 * max(abs(dc.delta_n), bath.band_halfwidth))


def bath_trajectory(dc: DecayConfig, bath: BathDiscretization, t_max: float) -> BathTrajectory:
    """Integrate the rotating-frame system for (B_0, B_c, A_1..A_K) up to ``t_max``.

    Two initial conditions are carried at once: B_0 = 1 gives u, B_c = 1 gives
    sqrt(N) v.  Returned u and v include the e^{i omega t} frame factor.
    """
    if bath.k_modes < 100:
        raise DomainError("bath needs at least 100 modes")
    if t_max < 0:
        raise DomainError("t_max must be nonnegative")
    if t_max > bath.horizon:
        raise HorizonError(f"t = {t_max} beyond recurrence horizon {bath.horizon:.3f}")

    n = dc.n_excitons
    g_n = dc.g * np.sqrt(n)
    lam = bath.couplings * np.sqrt(n)
    detuning = (bath.frequencies - dc.omega)[:, None]

    def rhs(y):
        d = np.empty_like(y)
        d[0] = 1j * g_n * y[1]
        d[1] = 1j * g_n * y[0] + 1j * (lam @ y[2:])
        d[2:] = 1j * detuning * y[2:] + 1j * lam[:, None] * y[1]
        return d

    steps = max(1, int(np.ceil(t_max / _max_step(dc, bath))))
    h = t_max / steps
    y = np.zeros((bath.k_modes + 2, 2), dtype=complex)
    y[0, 0] = 1.0
    y[1, 1] = 1.0
    b0 = np.empty((steps + 1, 2), dtype=complex)
    b0[0] = y[0]
    worst = 0.0
    for i in range(steps):
        k1 = rhs(y)
        k2 = rhs(y + 0.5 * h * k1)
        k3 = rhs(y + 0.5 * h * k2)
        k4 = rhs(y + h * k3)
        y = y + (h / 6.0) * (k1 + 2 * k2 + 2 * k3 + k4)
        b0[i + 1] = y[0]
        worst = max(worst, float(np.max(np.abs(np.sum(np.abs(y) ** 2, axis=0) - 1.0))))
    times = np.linspace(0.0, t_max, steps + 1)
    frame = np.exp(1j * dc.omega * times)
    return BathTrajectory(times, b0[:, 0] * frame, b0[:, 1] * frame / np.sqrt(n), worst)


def evolve_with_bath(dc: DecayConfig, bath: BathDiscretization, t: float) -> tuple[complex, complex]:
    """(u_num, v_num) at time ``t``."""
    traj = bath_trajectory(dc, bath, t)
    return complex(traj.u[-1]), complex(traj.v[-1])
