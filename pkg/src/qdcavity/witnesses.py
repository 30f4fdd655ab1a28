"""Closed-form multipartite entanglement indicators.

Three indicators are evaluated for the encoded cat state

    N (|0...0> + e^{i theta} prod_k (M_k |1>_k + p_k |0>_k))

* the Mermin-Klyshko expectation <B_M> and the normalized quantity B,
* the GHZ state-preparation fidelity (and F = 2 fidelity - 1),
* the squared multiqubit concurrence tau.

All of them depend on the state only through the mode overlaps p_k, so they
accept an :class:`~qdcavity.model.AmplitudeSet` plus a
:class:`QubitCountContext` that says which modes form the qubits.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Union

import numpy as np
from scipy.optimize import bisect

from .errors import BracketError, DegenerateStateError, DomainError
from .model import AmplitudeSet, DecayCoefficients, cat_weight, mean_photon_number

__all__ = [
    "QubitCountContext",
    "WitnessReport",
    "aligned_bell_phase",
    "bell_expectation",
    "bell_quantity",
    "fidelity",
    "fidelity_f",
    "tau",
    "witness_report",
    "exciton_curves",
    "exciton_witnesses",
    "dissipative_fidelity",
    "dissipative_fidelity_f",
    "threshold",
]


@dataclass(frozen=True)
class QubitCountContext:
    """Number of encoded qubits M.

    M = N + 1 selects the cavity and all excitons (modes 0..N);
    M = N selects the excitons only (modes 1..N).
    """

    m_qubits: int

    @classmethod
    def cavity_and_excitons(cls, n_excitons: int) -> "QubitCountContext":
        return cls(n_excitons + 1)

    @classmethod
    def excitons_only(cls, n_excitons: int) -> "QubitCountContext":
        return cls(n_excitons)

    def mode_slice(self, aset: AmplitudeSet) -> slice:
        n_modes = aset.amps.shape[-1]
        if self.m_qubits == n_modes:
            return slice(0, n_modes)
        if self.m_qubits == n_modes - 1:
            return slice(1, n_modes)
        raise DomainError(
            f"{self.m_qubits} qubits incompatible with a state of {n_modes} modes"
        )

    @property
    def max_bell(self) -> float:
        return 2.0 ** ((self.m_qubits + 1) / 2.0)

    @property
    def separable_bell(self) -> float:
        return 2.0 ** (self.m_qubits / 2.0)


@dataclass(frozen=True)
class WitnessReport:
    time: float
    bell_q: float
    fidelity_f: float
    tau: float
    mean_photon: float


def aligned_bell_phase(m_qubits: int) -> float:
    """Bell-operator phase pi (M - 1) / 4 for sigma_x / sigma_y settings."""
    return np.pi * (m_qubits - 1) / 4.0


def _selected(aset, ctx):
    sl = ctx.mode_slice(aset)
    energy = aset.energies[..., sl]
    return aset.overlaps[..., sl], aset.m_factors[..., sl], energy.sum(axis=-1)


def _weight(theta, energy):
    w = cat_weight(theta, energy)
    if np.any(~(w > 0)):
        raise DegenerateStateError("cat superposition has zero norm")
    return w


def bell_expectation(aset: AmplitudeSet, theta: float, ctx: QubitCountContext, beta=None):
    """<B_M> for sigma_x / sigma_y measurement settings.

    ``beta`` defaults to the aligned phase; at ``theta == beta`` the result is
    2^{(M+1)/2} prod_k M_k independent of the overlap product.
    """
    if beta is None:
        beta = aligned_bell_phase(ctx.m_qubits)
    _, m, energy = _selected(aset, ctx)
    w = _weight(theta, energy)
    big_p = np.exp(-2.0 * energy)
    return ctx.max_bell * (np.cos(theta - beta) + np.cos(beta) * big_p) / w * np.prod(m, axis=-1)


def bell_quantity(expectation, ctx: QubitCountContext):
    """B > 0 certifies genuine M-partite entanglement; B = 1 is maximal."""
    lo, hi = ctx.separable_bell, ctx.max_bell
    return (np.abs(expectation) - lo) / (hi - lo)


def fidelity(aset: AmplitudeSet, theta: float, gamma: float, ctx: QubitCountContext):
    """Overlap |<GHZ_gamma|Psi>|^2 with (|0..0> + e^{i gamma}|1..1>)/sqrt(2)."""
    p, m, energy = _selected(aset, ctx)
    w = _weight(theta, energy)
    big_p = np.exp(-2.0 * energy)
    q = np.prod(m, axis=-1)
    bracket = (
        1.0
        + q**2
        + big_p**2
        + 2.0 * np.cos(theta) * big_p
        + 2.0 * np.cos(theta - gamma) * q
        + 2.0 * np.cos(gamma) * big_p * q
    )
    return bracket / (4.0 * w)


def fidelity_f(aset, theta, gamma, ctx):
    """F = 2 fidelity - 1; F > 0 certifies genuine M-partite entanglement."""
    return 2.0 * fidelity(aset, theta, gamma, ctx) - 1.0


def tau(aset: AmplitudeSet, theta: float, ctx: QubitCountContext):
    """Squared multiqubit concurrence prod_k (1 - p_k^2) / (1 + cos(theta) prod_k p_k)^2."""
    _, m, energy = _selected(aset, ctx)
    w = _weight(theta, energy)
    return np.prod(m**2, axis=-1) / w**2


def witness_report(aset: AmplitudeSet, theta: float, alpha2: float, gamma=np.pi / 2, ctx=None):
    """Evaluate all indicators of one state at a common theta.

    Returns a list of :class:`WitnessReport` when ``aset.time`` is an array.
    """
    if ctx is None:
        ctx = QubitCountContext.cavity_and_excitons(aset.n_excitons)
    b = bell_quantity(bell_expectation(aset, theta, ctx), ctx)
    f = fidelity_f(aset, theta, gamma, ctx)
    t2 = tau(aset, theta, ctx)
    n = float(mean_photon_number(alpha2, theta))
    if aset.time.ndim == 0:
        return WitnessReport(float(aset.time), float(b), float(f), float(t2), n)
    return [
        WitnessReport(float(ti), float(bi), float(fi), float(ci), n)
        for ti, bi, fi, ci in zip(aset.time, b, f, t2)
    ]


def exciton_curves(alpha_abs, n: int, theta: float):
    """Vectorized (B, F, tau) of the exciton-only state over an array of |alpha|.

    At alpha = 0 with theta = pi, tau takes its W-state limit.
    """
    if n < 2:
        raise DomainError("exciton-only witnesses need at least two excitons")
    ctx = QubitCountContext.excitons_only(n)
    a2 = np.asarray(alpha_abs, dtype=float) ** 2
    q2 = (-np.expm1(-4.0 * a2 / n)) ** n  # prod over excitons of (1 - p^2)
    q = np.sqrt(q2)
    bell = bell_quantity(ctx.max_bell * q, ctx)
    fid = (1.0 + q) ** 2 / 4.0 + np.exp(-4.0 * a2) / 4.0
    w = cat_weight(theta, a2)
    with np.errstate(invalid="ignore", divide="ignore"):
        t2 = q2 / w**2
    # the W state of two excitons is a Bell pair
    t2 = np.where(w > 0, t2, 1.0 if n == 2 else 0.0)
    return bell[()], (2.0 * fid - 1.0)[()], t2[()]


def exciton_witnesses(alpha: complex, n: int, theta: float) -> WitnessReport:
    """Indicators of the exciton-only state reached at t = pi / (2G).

    Every exciton then holds beta = -i alpha / sqrt(N) e^{-i omega pi / 2},
    so p_n = exp(-2|alpha|^2 / N).  B uses the aligned Bell phase and F the
    theta = gamma = pi/2 reference; only tau depends on ``theta``.  The
    ``time`` field is pi/2 (G = 1).
    """
    bell, f, t2 = exciton_curves(abs(alpha), n, theta)
    return WitnessReport(
        time=np.pi / 2,
        bell_q=float(bell),
        fidelity_f=float(f),
        tau=float(t2),
        mean_photon=float(mean_photon_number(abs(alpha) ** 2, theta)),
    )


def dissipative_fidelity(alpha: complex, coeffs: DecayCoefficients, n: int):
    """GHZ fidelity of the decaying odd-cat state after tracing out the bath.

    Uses alpha_u = alpha u*, alpha_v = alpha v* and the energy balance
    |alpha|^2 = |alpha_u|^2 + N |alpha_v|^2 + bath, so the bath overlap never
    has to be formed explicitly.
    """
    a2 = abs(alpha) ** 2
    if a2 == 0:
        raise DegenerateStateError("odd cat with alpha = 0 has zero norm")
    eu = a2 * np.abs(coeffs.u) ** 2
    ev = a2 * np.abs(coeffs.v) ** 2
    pu, pv = np.exp(-2.0 * eu), np.exp(-2.0 * ev)
    mu, mv = np.sqrt(-np.expm1(-4.0 * eu)), np.sqrt(-np.expm1(-4.0 * ev))
    q = mu * mv**n
    e = np.exp(-2.0 * a2)
    # p_u^{-1} p_v^{-N} = exp(2 (|alpha_u|^2 + N |alpha_v|^2))
    bracket = 1.0 + 2.0 * e * (q * np.exp(2.0 * (eu + n * ev)) - 1.0) + (q - pu * pv**n) ** 2
    return bracket / (-4.0 * np.expm1(-2.0 * a2))


def dissipative_fidelity_f(alpha, coeffs, n):
    return 2.0 * dissipative_fidelity(alpha, coeffs, n) - 1.0


Metric = Union[str, Callable[[float], float]]


def _metric_function(metric: Metric, n: int) -> Callable[[float], float]:
    if callable(metric):
        return metric
    key = metric.lower()
    if key in ("bell", "b"):
        return lambda x: exciton_witnesses(x, n, np.pi).bell_q
    if key in ("fidelity", "f"):
        return lambda x: exciton_witnesses(x, n, np.pi).fidelity_f
    raise DomainError(f"unknown metric {metric!r}; expected 'bell' or 'fidelity'")


def threshold(metric: Metric, n: int, lo: float, hi: float, tol: float) -> float:
    """|alpha| at which the selected exciton indicator changes sign.

    ``metric`` is ``"bell"``, ``"fidelity"`` or any callable of |alpha|.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    f = _metric_function(metric, n)
    flo, fhi = f(lo), f(hi)
    if flo == 0:
        return float(lo)
    if fhi == 0:
        return float(hi)
    if np.sign(flo) == np.sign(fhi):
        raise BracketError(f"metric has the same sign at {lo} and {hi}")
    return float(bisect(f, lo, hi, xtol=tol))
