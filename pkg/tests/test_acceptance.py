"""Acceptance criteria, each at its stated tolerance.

Every test records one PASS/FAIL line, printed in the "acceptance criteria"
section of the pytest terminal summary.
"""
import io
import time

import numpy as np
import pytest
from scipy.signal import find_peaks

from qdcavity import cli, figures, model, numeric_oracle, validation, witnesses

pytestmark = pytest.mark.acceptance


def test_bell_threshold(criterion):
    start = time.perf_counter()
    root = witnesses.threshold("bell", 5, 1.0, 2.5, 1e-6)
    elapsed = time.perf_counter() - start
    ok = abs(root - 1.601) <= 0.01 and elapsed < 1.0
    criterion("criterion 1: Bell threshold N=5", ok, f"root={root:.7f} target=1.601+-0.01 time={elapsed:.3f}s")
    assert abs(root - 1.601) <= 0.01
    assert elapsed < 1.0


def test_fidelity_threshold(criterion, monkeypatch):
    root = witnesses.threshold("fidelity", 5, 1.0, 2.5, 1e-6)
    monkeypatch.setattr(validation, "run_all", validation.threshold_suite)
    buf = io.StringIO()
    cli.run_validate(buf)
    recorded = f"root={root!r}" in buf.getvalue()
    ok = abs(root - 1.228) <= 0.015 and recorded
    criterion("criterion 2: fidelity threshold N=5", ok,
              f"root={root:.7f} target=1.228+-0.015 in_report={recorded}")
    assert abs(root - 1.228) <= 0.015
    assert recorded


def test_oracle_equivalence(criterion):
    start = time.perf_counter()
    results = validation.witness_suite(ns=(2, 3, 5), samples=20, tol=1e-10)
    elapsed = time.perf_counter() - start
    worst = max(r.max_deviation for r in results)
    ok = all(r.passed for r in results) and elapsed < 10.0
    criterion("criterion 3: closed forms vs qubit oracle", ok, f"max_dev={worst:.2e} tol=1e-10 time={elapsed:.2f}s")
    assert all(r.passed for r in results), [r.line() for r in results]
    assert elapsed < 10.0


def test_ckw_consistency(criterion):
    r = validation.ckw_suite(samples=20, tol=1e-8)
    criterion("criterion 4: CKW residual tangle N=2", r.passed, f"max_dev={r.max_deviation:.2e} tol=1e-8")
    assert r.passed


def test_amplitude_dynamics(criterion):
    r = validation.amplitude_suite(samples=50, tol=1e-10)
    criterion("criterion 5: amplitudes vs matrix exponential", r.passed, f"max_dev={r.max_deviation:.2e} tol=1e-10")
    assert r.passed


def test_fig1_structure(criterion):
    table = figures.fig1(n=3, alpha2=3.0, grid=figures.Grid(0.0, 2 * np.pi, 1000))
    b, f = table.column("B"), table.column("F")
    bell_pos, fid_pos = b > 0, f > 0
    ok = bell_pos.any() and fid_pos.any() and not np.any(bell_pos & ~fid_pos)
    criterion("criterion 6: fig1 {B>0} subset of {F>0}", ok,
              f"#B>0={bell_pos.sum()} #F>0={fid_pos.sum()} violations={np.sum(bell_pos & ~fid_pos)}")
    assert bell_pos.any() and fid_pos.any()
    assert not np.any(bell_pos & ~fid_pos)


def _periodic_maxima(y):
    """Strict local maxima of a sampled periodic curve (grid excludes the endpoint)."""
    wrapped = np.concatenate((y[-1:], y, y[:1]))
    peaks, _ = find_peaks(wrapped)
    return int(np.sum((peaks >= 1) & (peaks <= len(y))))


def test_fig2_structure(criterion):
    ns = (2, 3, 5)
    # [0, 2pi) without its endpoint, 1000 samples
    grid = figures.Grid(0.0, 2 * np.pi * 999 / 1000, 1000)
    table = figures.fig2(alpha2=0.9, theta=np.pi, ns=ns, grid=grid)
    peaks = [float(table.column(f"tau_N{n}").max()) for n in ns]
    counts = [_periodic_maxima(table.column(f"tau_N{n}")) for n in ns]
    decreasing = all(a > b for a, b in zip(peaks, peaks[1:]))
    two_maxima = all(c == 2 for c in counts)
    criterion("criterion 7: fig2 max tau decreasing, two maxima per [0,2pi)", decreasing and two_maxima,
              "max_tau=" + ",".join(f"{p:.4f}" for p in peaks) + " maxima=" + ",".join(map(str, counts)))
    assert decreasing
    assert two_maxima, f"local maxima per [0, 2pi): {counts}"


def test_wigner_weisskopf_vs_bath(criterion):
    dc = model.DecayConfig(0.5, 1.0, 2)
    devs = []
    for k in (500, 1000, 2000):
        bath = numeric_oracle.BathDiscretization.flat(0.5, k, 20.0)
        traj = numeric_oracle.bath_trajectory(dc, bath, 5.0)
        devs.append(float(np.max(np.abs(traj.u - model.decay_coefficients(dc, traj.times).u))))
    monotone = all(b <= a for a, b in zip(devs, devs[1:]))
    ok = devs[-1] < 0.05 and monotone
    criterion("criterion 8: u(t) vs discretized bath", ok,
              "dev(K=500,1000,2000)=" + ",".join(f"{d:.6f}" for d in devs))
    assert devs[-1] < 0.05
    assert monotone


def test_decay_rate_proportional_to_n(criterion):
    gamma = 0.5
    rel = {n: model.envelope_decay_rate(model.DecayConfig(gamma, 1.0, n)) / (-n * gamma / 4) - 1 for n in (2, 3, 4)}
    ok = all(abs(r) <= 0.05 for r in rel.values())
    criterion("criterion 9: envelope slope -N Gamma/4", ok,
              "rel_err=" + ",".join(f"N{n}:{r:.1e}" for n, r in rel.items()))
    assert ok


def test_dissipative_asymptote(criterion):
    alpha = np.sqrt(3.0)
    late, early = [], []
    for n in (2, 3, 4):
        dc = model.DecayConfig(0.5, 1.0, n)
        late.append(float(witnesses.dissipative_fidelity_f(alpha, model.decay_coefficients(dc, 40.0), n)))
        early.append(float(witnesses.dissipative_fidelity_f(alpha, model.decay_coefficients(dc, 0.0), n)))
    expected = (1 - np.exp(-6.0)) / 2 - 1
    ok = all(abs(x) <= 0.01 for x in late) and all(abs(x - expected) <= 1e-12 for x in early)
    criterion("criterion 10: dissipative F(40) ~ 0, F(0) exact", ok,
              f"max|F(40)|={max(map(abs, late)):.1e} max|F(0)-exact|={max(abs(x - expected) for x in early):.1e}")
    assert all(abs(x) <= 0.01 for x in late)
    np.testing.assert_allclose(early, expected, atol=1e-12, rtol=0)
