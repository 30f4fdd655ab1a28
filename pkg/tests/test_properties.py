"""Invariants checked over randomly drawn configurations."""
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from qdcavity import qubit_oracle as qo
from qdcavity.model import (
    AmplitudeSet,
    DecayConfig,
    SystemConfig,
    couplings_from_spherical,
    decay_coefficients,
    lossless_amplitudes,
    spherical_from_couplings,
)
from qdcavity.validation import random_encodable_state
from qdcavity.witnesses import (
    QubitCountContext,
    aligned_bell_phase,
    bell_expectation,
    bell_quantity,
    fidelity,
    fidelity_f,
    tau,
)

finite = dict(allow_nan=False, allow_infinity=False)
coupling_lists = st.lists(st.floats(0.0, 5.0, **finite), min_size=1, max_size=8).filter(lambda g: sum(g) > 1e-3)
phases = st.floats(0.0, 2 * np.pi, **finite)


@st.composite
def configs(draw, max_n=6):
    g = draw(coupling_lists.filter(lambda c: len(c) <= max_n))
    re, im = draw(st.floats(-2.5, 2.5, **finite)), draw(st.floats(-2.5, 2.5, **finite))
    theta = draw(phases)
    if abs(complex(re, im)) < 1e-3:
        theta = 0.0
    return SystemConfig(len(g), g, omega=draw(st.floats(-3, 3, **finite)), alpha=complex(re, im), theta=theta)


times = st.floats(0.0, 30.0, **finite)


@settings(max_examples=200, deadline=None)
@given(configs(), times)
def test_lossless_energy_conservation(cfg, t):
    a = lossless_amplitudes(cfg, t)
    assert abs(np.sum(a.energies) - abs(cfg.alpha) ** 2) <= 1e-12 * max(1.0, abs(cfg.alpha) ** 2)


@settings(max_examples=200, deadline=None)
@given(coupling_lists)
def test_spherical_round_trip(g):
    back = couplings_from_spherical(spherical_from_couplings(g), len(g))
    np.testing.assert_allclose(back, g, atol=1e-12 * max(1.0, max(g)))
    assert np.sum(back**2) == pytest.approx(np.sum(np.square(g)), rel=1e-12)


@settings(max_examples=60, deadline=None)
@given(configs(), times)
def test_frequency_only_changes_phases(cfg, t):
    ref = None
    for omega in (0.0, 1.0, 5.0):
        c = SystemConfig(cfg.n_excitons, cfg.couplings, omega=omega, alpha=cfg.alpha, theta=cfg.theta)
        a = lossless_amplitudes(c, t)
        ctx = QubitCountContext.cavity_and_excitons(c.n_excitons)
        vals = np.concatenate(
            (a.overlaps, a.m_factors,
             [bell_expectation(a, c.theta, ctx), fidelity(a, c.theta, 0.3, ctx), tau(a, c.theta, ctx)])
        )
        if ref is None:
            ref = vals
        else:
            np.testing.assert_allclose(vals, ref, atol=1e-12)


@settings(max_examples=100, deadline=None)
@given(configs(), st.floats(0.0, 10.0, **finite))
def test_overlaps_periodic_in_pi_over_g(cfg, t):
    a = lossless_amplitudes(cfg, t)
    b = lossless_amplitudes(cfg, t + np.pi / cfg.big_g)
    np.testing.assert_allclose(b.overlaps, a.overlaps, atol=1e-12)


@settings(max_examples=200, deadline=None)
@given(st.floats(0.0, 3.0, **finite), st.floats(0.05, 3.0, **finite), st.integers(1, 8),
       st.floats(0.0, 40.0, **finite))
def test_decay_never_creates_energy(gamma, g, n, t):
    c = decay_coefficients(DecayConfig(gamma, g, n), t)
    total = abs(c.u) ** 2 + n * abs(c.v) ** 2
    assert total <= 1 + 1e-12
    if gamma == 0:
        assert total == pytest.approx(1.0, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(st.floats(0.01, 1.0, **finite), st.floats(0.5, 3.0, **finite), st.integers(1, 6),
       st.floats(0.0, 20.0, **finite))
def test_decay_envelope_bound(gamma, g, n, t):
    dc = DecayConfig(gamma, g, n)
    if dc.delta_n.imag != 0 or abs(dc.delta_n) < 1e-6:
        return
    u = decay_coefficients(dc, t).u
    assert abs(u) <= np.exp(-dc.rate * t) * (1 + dc.rate / abs(dc.delta_n)) + 1e-15


@settings(max_examples=100, deadline=None)
@given(st.integers(2, 6), st.floats(0.05, 5.0, **finite), phases, st.floats(0.0, 3.2, **finite),
       st.randoms(use_true_random=False))
def test_tau_permutation_invariant(n, alpha2, theta, t, rnd):
    a = lossless_amplitudes(SystemConfig(n, np.linspace(0.3, 1.0, n), alpha=np.sqrt(alpha2), theta=theta), t)
    order = list(range(n + 1))
    rnd.shuffle(order)
    shuffled = AmplitudeSet(a.time, a.amps[order])
    ctx = QubitCountContext.cavity_and_excitons(n)
    assert tau(shuffled, theta, ctx) == pytest.approx(tau(a, theta, ctx), rel=1e-12, abs=1e-15)


@settings(max_examples=200, deadline=None)
@given(configs(), times, phases)
def test_bounds(cfg, t, gamma):
    a = lossless_amplitudes(cfg, t)
    ctx = QubitCountContext.cavity_and_excitons(cfg.n_excitons)
    assert abs(bell_expectation(a, cfg.theta, ctx)) <= ctx.max_bell * (1 + 1e-12)
    assert bell_quantity(bell_expectation(a, cfg.theta, ctx), ctx) <= 1 + 1e-12
    f = fidelity(a, cfg.theta, gamma, ctx)
    assert -1e-12 <= f <= 1 + 1e-12
    assert -1 - 1e-12 <= fidelity_f(a, cfg.theta, gamma, ctx) <= 1 + 1e-12
    assert -1e-12 <= tau(a, cfg.theta, ctx) <= 1 + 1e-12


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.lists(st.floats(0.01, 6.0, **finite), min_size=2, max_size=10))
def test_tau_grows_with_energy(n, alpha2s):
    ctx = QubitCountContext.cavity_and_excitons(n)
    vals = [tau(lossless_amplitudes(SystemConfig.equal(n, alpha=np.sqrt(x), theta=np.pi), np.pi / 4), np.pi, ctx)
            for x in sorted(alpha2s)]
    assert all(b >= a - 1e-15 for a, b in zip(vals, vals[1:]))


@settings(max_examples=50, deadline=None)
@given(st.integers(1, 6), st.floats(0.05, 5.0, **finite), st.floats(0.05, 3.0, **finite))
def test_odd_cat_maximizes_tau(n, alpha2, t):
    a = lossless_amplitudes(SystemConfig.equal(n, alpha=np.sqrt(alpha2)), t)
    ctx = QubitCountContext.cavity_and_excitons(n)
    best = tau(a, np.pi, ctx)
    for theta in np.linspace(0, 2 * np.pi, 64, endpoint=False):
        assert tau(a, theta, ctx) <= best * (1 + 1e-12)


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**32 - 1), st.sampled_from([2, 3, 5]))
def test_closed_forms_match_dense_oracle(seed, n):
    # M = N + 1 qubits; the sigma_y concurrence is only meaningful for even M (M = 3 uses CKW)
    rng = np.random.default_rng(seed)
    cfg, a = random_encodable_state(rng, n)
    psi = qo.encode_qubit_state(a, cfg.theta)
    ctx = QubitCountContext.cavity_and_excitons(n)
    assert bell_expectation(a, cfg.theta, ctx) == pytest.approx(
        qo.expectation(qo.bell_operator_closed_form(n + 1, aligned_bell_phase(n + 1)), psi), abs=1e-10)
    assert tau(a, cfg.theta, ctx) == pytest.approx(qo.concurrence_multiqubit(psi) ** 2, abs=1e-10)
