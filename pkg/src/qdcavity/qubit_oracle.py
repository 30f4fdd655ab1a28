"""Brute-force qubit-level checks of the closed-form indicators.

States are dense vectors of length 2**M in lexicographic order: qubit 0 is
the most significant bit.  When built from an :class:`AmplitudeSet`, qubit j
is the j-th selected mode.  Nothing in here uses the closed forms of
:mod:`qdcavity.witnesses`.
"""
from __future__ import annotations

import warnings
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateEncodingError, UnsupportedSizeError
from .model import AmplitudeSet, cat_weight

MAX_QUBITS = 12
ENCODING_CUTOFF = 1e-8

SIGMA_X = np.array([[0, 1], [1, 0]], dtype=complex)
SIGMA_Y = np.array([[0, -1j], [1j, 0]], dtype=complex)
SIGMA_PLUS = np.array([[0, 1], [0, 0]], dtype=complex)  # |0><1|
SIGMA_MINUS = SIGMA_PLUS.T.copy()


@dataclass(frozen=True)
class QubitState:
    m_qubits: int
    amplitudes: np.ndarray

    def __post_init__(self):
        amps = np.asarray(self.amplitudes, dtype=complex)
        if amps.shape != (2**self.m_qubits,):
            raise UnsupportedSizeError(f"expected {2**self.m_qubits} amplitudes, got {amps.shape}")
        norm = np.vdot(amps, amps).real
        if abs(norm - 1.0) > 1e-12:
            raise ValueError(f"state is not normalized (norm^2 = {norm!r})")
        object.__setattr__(self, "amplitudes", amps)

    def tensor(self) -> np.ndarray:
        return self.amplitudes.reshape((2,) * self.m_qubits)


@dataclass(frozen=True)
class DenseOperator:
    m_qubits: int
    entries: np.ndarray

    def is_hermitian(self, atol=1e-12) -> bool:
        return bool(np.max(np.abs(self.entries - self.entries.conj().T)) <= atol)


def _check_size(m):
    if not 1 <= m <= MAX_QUBITS:
        raise UnsupportedSizeError(f"qubit count must be in [1, {MAX_QUBITS}], got {m}")


def encode_qubit_state(aset: AmplitudeSet, theta: float, modes: Sequence[int] | None = None) -> QubitState:
    """Expand the cat state in the per-mode orthonormal basis.

    |0>_k = |alpha_k>, |1>_k = (|-alpha_k> - p_k |0>_k) / M_k, so that
    |-alpha_k> = M_k |1>_k + p_k |0>_k.  ``aset`` must be for a single time.
    """
    if aset.amps.ndim != 1:
        raise ValueError("encode one time point at a time")
    if modes is None:
        modes = range(aset.amps.shape[-1])
    modes = list(modes)
    _check_size(len(modes))
    p = aset.overlaps[modes]
    m = aset.m_factors[modes]
    if np.any(m < ENCODING_CUTOFF):
        raise DegenerateEncodingError(
            f"mode(s) {[k for k, mk in zip(modes, m) if mk < ENCODING_CUTOFF]} have M_k < {ENCODING_CUTOFF}"
        )
    second = np.ones(1, dtype=complex)
    for pk, mk in zip(p, m):
        second = np.kron(second, np.array([pk, mk]))
    first = np.zeros_like(second)
    first[0] = 1.0
    norm = 1.0 / np.sqrt(2.0 * cat_weight(theta, aset.energies[modes].sum()))
    return QubitState(len(modes), norm * (first + np.exp(1j * theta) * second))


def bell_operator(m: int) -> DenseOperator:
    """Mermin-Klyshko operator built by the recursion with A = sigma_x, A' = sigma_y.

    B_1 = 2 A, B'_1 = 2 A';
    B_k = (A + A')/2 (x) B_{k-1} + (A - A')/2 (x) B'_{k-1}
    B'_k = (A + A')/2 (x) B'_{k-1} - (A - A')/2 (x) B_{k-1}
    """
    _check_size(m)
    plus = (SIGMA_X + SIGMA_Y) / 2
    minus = (SIGMA_X - SIGMA_Y) / 2
    b, bp = 2 * SIGMA_X, 2 * SIGMA_Y
    for _ in range(m - 1):
        b, bp = np.kron(plus, b) + np.kron(minus, bp), np.kron(plus, bp) - np.kron(minus, b)
    return DenseOperator(m, b)


def bell_operator_closed_form(m: int, beta: float | None = None) -> DenseOperator:
    """2^{(m+1)/2} (e^{-i beta} sigma_+^{(x)m} + e^{i beta} sigma_-^{(x)m})."""
    _check_size(m)
    if beta is None:
        beta = np.pi * (m - 1) / 4
    dim = 2**m
    op = np.zeros((dim, dim), dtype=complex)
    # sigma_+^{(x)m} = |0..0><1..1|
    op[0, dim - 1] = np.exp(-1j * beta)
    op[dim - 1, 0] = np.exp(1j * beta)
    return DenseOperator(m, 2.0 ** ((m + 1) / 2) * op)


def expectation(op: DenseOperator, psi: QubitState) -> float:
    if op.m_qubits != psi.m_qubits:
        raise ValueError(f"operator on {op.m_qubits} qubits, state on {psi.m_qubits}")
    val = np.vdot(psi.amplitudes, op.entries @ psi.amplitudes)
    if abs(val.imag) > 1e-12:
        raise ValueError(f"expectation has imaginary part {val.imag!r}; operator not Hermitian?")
    return float(val.real)


def ghz_state(m: int, gamma: float) -> QubitState:
    _check_size(m)
    amps = np.zeros(2**m, dtype=complex)
    amps[0] = 1 / np.sqrt(2)
    amps[-1] = np.exp(1j * gamma) / np.sqrt(2)
    return QubitState(m, amps)


def overlap_fidelity(target: QubitState, psi: QubitState) -> float:
    """|<target|psi>|^2."""
    return float(abs(np.vdot(target.amplitudes, psi.amplitudes)) ** 2)


def _apply_each(op: np.ndarray, psi: np.ndarray, m: int) -> np.ndarray:
    """Apply the single-qubit ``op`` to every qubit of a state vector."""
    t = psi.reshape((2,) * m)
    for axis in range(m):
        t = np.moveaxis(np.tensordot(op, t, axes=([1], [axis])), 0, axis)
    return t.reshape(-1)


def reduced_density_matrix(psi: QubitState, keep: Sequence[int]) -> np.ndarray:
    """Partial trace onto the qubits in ``keep`` (kept in the given order)."""
    keep = list(keep)
    rest = [q for q in range(psi.m_qubits) if q not in keep]
    t = np.transpose(psi.tensor(), keep + rest).reshape(2 ** len(keep), -1)
    return t @ t.conj().T


def _concurrence_from_factor(v: np.ndarray) -> float:
    # rho = V V^dagger: the lambdas of rho rho~ are the singular values of
    # V^T (sigma_y (x) sigma_y) V, padded with zeros up to four
    lam = np.zeros(4)
    sv = np.linalg.svd(v.T @ np.kron(SIGMA_Y, SIGMA_Y) @ v, compute_uv=False)
    lam[: sv.size] = sv[:4]
    lam = np.sort(lam)[::-1]
    return float(max(0.0, lam[0] - lam[1] - lam[2] - lam[3]))


def two_qubit_concurrence(rho: np.ndarray, rcond=1e-14) -> float:
    """Wootters concurrence of a 4x4 density matrix.

    Eigenvalues of rho below ``rcond`` times the largest are treated as zero
    so that rank-deficient states do not pick up sqrt(rounding) errors.
    """
    w, u = np.linalg.eigh(np.asarray(rho, dtype=complex))
    keep = w > rcond * w.max()
    return _concurrence_from_factor(u[:, keep] * np.sqrt(w[keep]))


def wootters_pairwise(psi: QubitState, i: int, j: int) -> float:
    """Concurrence between qubits i and j of a three-qubit pure state.

    The reduced state is factored as rho_ij = V V^dagger directly from the
    amplitudes, V being the 4 x 2 reshaped state with qubits i, j in front.
    """
    if psi.m_qubits != 3:
        raise UnsupportedSizeError("pairwise concurrence is only provided for three qubits")
    if i == j:
        raise ValueError("need two distinct qubits")
    rest = [q for q in range(3) if q not in (i, j)]
    v = np.transpose(psi.tensor(), [i, j] + rest).reshape(4, -1)
    return _concurrence_from_factor(v)


def bipartite_concurrence_one_vs_rest(psi: QubitState, i: int) -> float:
    """sqrt(2 (1 - Tr rho_i^2)) for qubit i against all others."""
    norm = np.vdot(psi.amplitudes, psi.amplitudes).real
    if abs(norm - 1) > 1e-12:
        raise ValueError("state is not normalized")
    rho = reduced_density_matrix(psi, [i])
    purity = np.trace(rho @ rho).real
    return float(np.sqrt(max(0.0, 2.0 * (1.0 - purity))))


def residual_tangle(psi: QubitState, focus: int = 0) -> float:
    """C^2_{focus(rest)} - sum of squared pairwise concurrences (three qubits)."""
    if psi.m_qubits != 3:
        raise UnsupportedSizeError("residual tangle is defined here for three qubits")
    others = [q for q in range(3) if q != focus]
    c_all = bipartite_concurrence_one_vs_rest(psi, focus)
    return c_all**2 - sum(wootters_pairwise(psi, focus, q) ** 2 for q in others)


def concurrence_multiqubit(psi: QubitState) -> float:
    """|<psi| sigma_y^{(x)M} |psi*>|.

    For M = 3 that overlap vanishes identically (sigma_y^{(x)3} is
    antisymmetric), so the square root of the residual tangle is returned
    instead.  Other odd M are outside the measure's domain and only warn.
    """
    m = psi.m_qubits
    if m == 3:
        return float(np.sqrt(max(0.0, residual_tangle(psi))))
    if m % 2:
        warnings.warn(
            f"multiqubit concurrence is defined for an even number of qubits, got {m}",
            RuntimeWarning,
            stacklevel=2,
        )
    flipped = _apply_each(SIGMA_Y, psi.amplitudes.conj(), m)
    return float(abs(np.vdot(psi.amplitudes, flipped)))
