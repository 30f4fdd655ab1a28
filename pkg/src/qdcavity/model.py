"""Closed-form dynamics of N bosonic excitons coupled to one cavity mode.

Units: hbar = 1, and by default the total coupling G = 1 so that time is
dimensionless.  Everything here is a pure function of immutable inputs and
broadcasts over arrays of times.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from scipy.signal import find_peaks

from .errors import (
    DegenerateStateError,
    DomainError,
    InvalidConfigurationError,
)

__all__ = [
    "SystemConfig",
    "SphericalCoupling",
    "AmplitudeSet",
    "DecayConfig",
    "DecayCoefficients",
    "spherical_from_couplings",
    "couplings_from_spherical",
    "lossless_amplitudes",
    "cat_weight",
    "cat_normalization",
    "mean_photon",
    "mean_photon_number",
    "decay_coefficients",
    "envelope_decay_rate",
]


def cat_weight(theta, energy):
    """Return ``1 + cos(theta) * exp(-2 * energy)`` without cancellation.

    ``energy`` is the summed ``|alpha_k|**2`` of the modes in the superposition.
    Rewritten as ``(1 - e) + (1 + cos(theta)) e`` so the odd cat (theta = pi)
    stays accurate for small amplitudes and is exactly zero at alpha = 0.
    """
    energy = np.asarray(energy, dtype=float)
    return -np.expm1(-2.0 * energy) + (1.0 + np.cos(theta)) * np.exp(-2.0 * energy)


@dataclass(frozen=True)
class SystemConfig:
    """Cavity + N exciton system with a cat-state cavity input.

    Parameters
    ----------
    n_excitons : int
        Number of exciton modes N >= 1.
    couplings : sequence of float
        Nonnegative exciton-cavity couplings g_1..g_N.
    omega : float
        Common cavity/exciton frequency.
    alpha : complex
        Coherent amplitude of the initial cat state.
    theta : float
        Relative phase of the two cat branches.
    """

    n_excitons: int
    couplings: tuple[float, ...]
    omega: float = 0.0
    alpha: complex = 1.0
    theta: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "couplings", tuple(float(g) for g in self.couplings))
        object.__setattr__(self, "alpha", complex(self.alpha))
        if int(self.n_excitons) != self.n_excitons or self.n_excitons < 1:
            raise InvalidConfigurationError(f"n_excitons must be a positive integer, got {self.n_excitons}")
        if len(self.couplings) != self.n_excitons:
            raise InvalidConfigurationError(
                f"expected {self.n_excitons} couplings, got {len(self.couplings)}"
            )
        if any(g < 0 or not np.isfinite(g) for g in self.couplings):
            raise InvalidConfigurationError("couplings must be finite and nonnegative")
        if self.big_g <= 0:
            raise InvalidConfigurationError("at least one coupling must be nonzero")
        if not cat_weight(self.theta, abs(self.alpha) ** 2) > 0:
            raise DegenerateStateError("odd cat state with alpha = 0 has zero norm")

    @classmethod
    def equal(cls, n_excitons, alpha=1.0, theta=0.0, big_g=1.0, omega=0.0):
        """Equal couplings g_n = G / sqrt(N)."""
        g = big_g / np.sqrt(n_excitons)
        return cls(n_excitons, (g,) * n_excitons, omega=omega, alpha=alpha, theta=theta)

    @property
    def big_g(self) -> float:
        return float(np.sqrt(np.sum(np.square(self.couplings))))

    @property
    def n_modes(self) -> int:
        return self.n_excitons + 1


@dataclass(frozen=True)
class SphericalCoupling:
    big_g: float
    angles: tuple[float, ...] = ()


def spherical_from_couplings(couplings: Sequence[float]) -> SphericalCoupling:
    """Write couplings as G times a generalized spherical unit vector.

    g_1 = G cos(phi_1), g_2 = G sin(phi_1) cos(phi_2), ...,
    g_N = G sin(phi_1) ... sin(phi_{N-1}).
    """
    g = np.asarray(couplings, dtype=float)
    if g.ndim != 1 or g.size == 0:
        raise InvalidConfigurationError("need a nonempty 1-d list of couplings")
    if np.any(g < 0):
        raise InvalidConfigurationError("couplings must be nonnegative")
    big_g = float(np.linalg.norm(g))
    if big_g == 0:
        raise InvalidConfigurationError("all couplings are zero")
    # tail[i] = norm of g[i:]
    tail = np.sqrt(np.cumsum(g[::-1] ** 2)[::-1])
    angles = tuple(float(np.arctan2(tail[i + 1], g[i])) for i in range(g.size - 1))
    return SphericalCoupling(big_g, angles)


def couplings_from_spherical(sc: SphericalCoupling, n: int) -> np.ndarray:
    if n < 1 or len(sc.angles) != n - 1:
        raise InvalidConfigurationError(f"{n} couplings need {n - 1} angles, got {len(sc.angles)}")
    phi = np.asarray(sc.angles, dtype=float)
    sines = np.concatenate(([1.0], np.cumprod(np.sin(phi))))
    cosines = np.concatenate((np.cos(phi), [1.0]))
    return sc.big_g * sines * cosines


@dataclass(frozen=True)
class AmplitudeSet:
    """Coherent amplitudes alpha_k(t) of modes 0 (cavity) .. N (excitons).

    ``amps`` has shape ``(..., N + 1)``; leading axes follow ``time``.
    ``overlaps`` are p_k = <-alpha_k|alpha_k> = exp(-2|alpha_k|^2) and
    ``m_factors`` are M_k = sqrt(1 - p_k^2).
    """

    time: np.ndarray
    amps: np.ndarray
    overlaps: np.ndarray = field(init=False)
    m_factors: np.ndarray = field(init=False)

    def __post_init__(self):
        amps = np.asarray(self.amps, dtype=complex)
        object.__setattr__(self, "amps", amps)
        object.__setattr__(self, "time", np.asarray(self.time, dtype=float))
        e = np.abs(amps) ** 2
        object.__setattr__(self, "overlaps", np.exp(-2.0 * e))
        object.__setattr__(self, "m_factors", np.sqrt(-np.expm1(-4.0 * e)))

    @property
    def n_excitons(self) -> int:
        return self.amps.shape[-1] - 1

    @property
    def energies(self) -> np.ndarray:
        return np.abs(self.amps) ** 2


def lossless_amplitudes(cfg: SystemConfig, t) -> AmplitudeSet:
    """Amplitudes of the coherent component after time ``t`` (scalar or array)."""
    t = np.asarray(t, dtype=float)
    big_g = cfg.big_g
    phase = np.exp(-1j * cfg.omega * t)[..., None]
    g = np.asarray(cfg.couplings) / big_g
    cavity = cfg.alpha * np.cos(big_g * t)[..., None]
    excitons = -1j * cfg.alpha * np.sin(big_g * t)[..., None] * g
    amps = np.concatenate((cavity, excitons), axis=-1) * phase
    return AmplitudeSet(t, amps)


def cat_normalization(cfg: SystemConfig, aset: AmplitudeSet):
    """Normalization constant [2 + 2 cos(theta) prod_k p_k]^(-1/2)."""
    w = cat_weight(cfg.theta, aset.energies.sum(axis=-1))
    if np.any(~(w > 0)):
        raise DegenerateStateError("cat superposition has zero norm")
    return 1.0 / np.sqrt(2.0 * w)


def mean_photon_number(alpha2, theta):
    """Cavity photon number of the initial cat, including the alpha -> 0 limits."""
    alpha2 = np.asarray(alpha2, dtype=float)
    plus = cat_weight(theta, alpha2)
    minus = -np.expm1(-2.0 * alpha2) + (1.0 - np.cos(theta)) * np.exp(-2.0 * alpha2)
    with np.errstate(invalid="ignore", divide="ignore"):
        n = minus / plus * alpha2
    # odd cat at alpha -> 0 tends to the one-photon Fock state
    return np.where(plus > 0, n, 1.0)[()]


def mean_photon(cfg: SystemConfig) -> float:
    return float(mean_photon_number(abs(cfg.alpha) ** 2, cfg.theta))


@dataclass(frozen=True)
class DecayConfig:
    """Equal-coupling system whose excitons leak into a zero-temperature bath."""

    gamma: float
    g: float
    n_excitons: int
    omega: float = 0.0

    def __post_init__(self):
        if not self.g > 0:
            raise InvalidConfigurationError("g must be positive")
        if self.gamma < 0:
            raise InvalidConfigurationError("gamma must be nonnegative")
        if int(self.n_excitons) != self.n_excitons or self.n_excitons < 1:
            raise InvalidConfigurationError("n_excitons must be a positive integer")

    @property
    def rate(self) -> float:
        """Amplitude decay rate N * gamma / 4."""
        return self.n_excitons * self.gamma / 4.0

    @property
    def delta_n(self) -> complex:
        n = self.n_excitons
        return np.sqrt(complex(n * self.g**2 - n**2 * self.gamma**2 / 16.0))


@dataclass(frozen=True)
class DecayCoefficients:
    u: complex
    v: complex
    delta_n: complex


def _sin_over(delta: complex, t: np.ndarray) -> np.ndarray:
    """sin(delta * t) / delta, continuous through delta = 0."""
    x = delta * t
    small = np.abs(x) < 1e-4
    safe = np.where(small, 1.0, x)
    return np.where(small, t * (1.0 - x**2 / 6.0), t * np.sin(safe) / safe)


def decay_coefficients(dc: DecayConfig, t) -> DecayCoefficients:
    """Wigner-Weisskopf coefficients of b_0(t) = u b_0 + v sum_n b_n + bath terms.

    The overdamped regime (N g^2 < N^2 Gamma^2 / 16) follows from the
    complex square root for Delta_N.
    """
    t = np.asarray(t, dtype=float)
    if np.any(t < 0):
        raise DomainError("decay coefficients need t >= 0")
    a = dc.rate
    delta = dc.delta_n
    s = _sin_over(delta, t)
    env = np.exp(-a * t) * np.exp(1j * dc.omega * t)
    u = env * (np.cos(delta * t) + a * s)
    v = 1j * dc.g * env * s
    return DecayCoefficients(u[()], v[()], delta)


def envelope_decay_rate(dc: DecayConfig, t_max=None, points=200_001) -> float:
    """Slope of a log-linear fit through the successive peaks of |u(t)|.

    Should come out as -N * gamma / 4 in the underdamped regime.
    """
    if t_max is None:
        t_max = 12.0 / dc.rate if dc.rate > 0 else 50.0
    t = np.linspace(0.0, t_max, points)
    mag = np.abs(decay_coefficients(dc, t).u)
    peaks, _ = find_peaks(mag)
    if len(peaks) < 3:
        raise DomainError("fewer than three peaks of |u(t)|; not in the underdamped regime")
    slope, _ = np.polyfit(t[peaks], np.log(mag[peaks]), 1)
    return float(slope)
