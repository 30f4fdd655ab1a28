"""Oracle-equivalence suites behind ``qdcavity validate``.

Closed forms are looked up through their modules at call time, so a
patched implementation is what gets checked.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import model, numeric_oracle, qubit_oracle, witnesses

SEED = 20260101


@dataclass(frozen=True)
class SuiteResult:
    name: str
    max_deviation: float
    tolerance: float
    note: str = ""

    @property
    def passed(self) -> bool:
        return bool(self.max_deviation <= self.tolerance)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        text = f"{status}  {self.name:<34s} max_dev={self.max_deviation:.3e}  tol={self.tolerance:.1e}"
        return f"{text}  {self.note}" if self.note else text


def random_encodable_state(rng, n, alpha2_range=(0.3, 4.0)):
    """Draw (cfg, aset) with every mode encodable (M_k above the oracle cutoff)."""
    while True:
        theta = rng.uniform(0.0, 2.0 * np.pi)
        alpha = np.sqrt(rng.uniform(*alpha2_range)) * np.exp(1j * rng.uniform(0, 2 * np.pi))
        cfg = model.SystemConfig.equal(n, alpha=alpha, theta=theta, omega=rng.uniform(0, 2))
        aset = model.lossless_amplitudes(cfg, rng.uniform(0.0, np.pi))
        if aset.m_factors.min() > 1e-3:
            return cfg, aset


def witness_suite(ns=(2, 3, 5), samples=20, seed=SEED, tol=1e-10):
    rng = np.random.default_rng(seed)
    dev = {"bell": 0.0, "fidelity": 0.0, "tau": 0.0}
    for n in ns:
        ctx = witnesses.QubitCountContext.cavity_and_excitons(n)
        op = qubit_oracle.bell_operator(n + 1)
        for _ in range(samples):
            cfg, aset = random_encodable_state(rng, n)
            psi = qubit_oracle.encode_qubit_state(aset, cfg.theta)
            gamma = rng.uniform(0, 2 * np.pi)
            b_num = qubit_oracle.expectation(op, psi)
            f_num = qubit_oracle.overlap_fidelity(qubit_oracle.ghz_state(n + 1, gamma), psi)
            t_num = qubit_oracle.concurrence_multiqubit(psi) ** 2
            dev["bell"] = max(dev["bell"], abs(witnesses.bell_expectation(aset, cfg.theta, ctx) - b_num))
            dev["fidelity"] = max(dev["fidelity"], abs(witnesses.fidelity(aset, cfg.theta, gamma, ctx) - f_num))
            dev["tau"] = max(dev["tau"], abs(witnesses.tau(aset, cfg.theta, ctx) - t_num))
    label = ",".join(map(str, ns))
    return [SuiteResult(f"{k} vs qubit oracle (N={label})", v, tol) for k, v in dev.items()]


def ckw_suite(samples=20, seed=SEED + 1, tol=1e-8):
    rng = np.random.default_rng(seed)
    ctx = witnesses.QubitCountContext.cavity_and_excitons(2)
    worst = 0.0
    for _ in range(samples):
        cfg, aset = random_encodable_state(rng, 2)
        psi = qubit_oracle.encode_qubit_state(aset, cfg.theta)
        worst = max(worst, abs(qubit_oracle.residual_tangle(psi) - witnesses.tau(aset, cfg.theta, ctx)))
    return SuiteResult("tau vs CKW residual tangle (N=2)", worst, tol)


def random_config(rng, n):
    couplings = rng.uniform(0.0, 2.0, size=n)
    couplings[rng.integers(n)] += 0.1
    alpha = rng.normal() + 1j * rng.normal()
    return model.SystemConfig(n, couplings, omega=rng.uniform(-2, 2), alpha=alpha, theta=rng.uniform(0, 2 * np.pi))


def amplitude_suite(samples=50, seed=SEED + 2, tol=1e-10):
    rng = np.random.default_rng(seed)
    worst = 0.0
    for _ in range(samples):
        cfg = random_config(rng, int(rng.integers(1, 7)))
        t = rng.uniform(0, 10)
        diff = model.lossless_amplitudes(cfg, t).amps - numeric_oracle.evolve_amplitudes_numeric(cfg, t).amps
        worst = max(worst, float(np.max(np.abs(diff))))
    return SuiteResult("amplitudes vs matrix exponential", worst, tol)


def bell_recursion_suite(max_m=6, tol=1e-12):
    worst = 0.0
    for m in range(1, max_m + 1):
        diff = qubit_oracle.bell_operator(m).entries - qubit_oracle.bell_operator_closed_form(m).entries
        worst = max(worst, float(np.max(np.abs(diff))))
    return SuiteResult(f"Bell recursion vs closed form M<={max_m}", worst, tol)


def bath_suite(gamma=0.5, g=1.0, n=2, halfwidth=20.0, k_modes=(500, 1000, 2000), t_max=5.0, tol=0.05):
    dc = model.DecayConfig(gamma, g, n)
    devs = []
    for k in k_modes:
        traj = numeric_oracle.bath_trajectory(dc, numeric_oracle.BathDiscretization.flat(gamma, k, halfwidth), t_max)
        devs.append(float(np.max(np.abs(traj.u - model.decay_coefficients(dc, traj.times).u))))
    monotone = all(b <= a for a, b in zip(devs, devs[1:]))
    note = "K=" + ",".join(f"{k}:{d:.6f}" for k, d in zip(k_modes, devs))
    note += "  non-increasing" if monotone else "  NOT non-increasing"
    # a non-monotone sequence fails regardless of magnitude
    return SuiteResult("u(t) vs discretized bath", devs[-1] if monotone else np.inf, tol, note)


def decay_rate_suite(gamma=0.5, g=1.0, ns=(2, 3, 4), tol=0.05):
    worst = 0.0
    for n in ns:
        slope = model.envelope_decay_rate(model.DecayConfig(gamma, g, n))
        worst = max(worst, abs(slope / (-n * gamma / 4) - 1))
    return SuiteResult("envelope slope vs -N*Gamma/4 (rel)", worst, tol)


def threshold_suite(n=5):
    b = witnesses.threshold("bell", n, 1.0, 2.5, 1e-6)
    f = witnesses.threshold("fidelity", n, 1.0, 2.5, 1e-6)
    return [
        SuiteResult("Bell threshold vs 1.601", abs(b - 1.601), 0.01, f"root={b!r}"),
        SuiteResult("fidelity threshold vs 1.228", abs(f - 1.228), 0.015, f"root={f!r}"),
    ]


def run_all(include_bath=True) -> list[SuiteResult]:
    results = witness_suite()
    results.append(ckw_suite())
    results.append(amplitude_suite())
    results.append(bell_recursion_suite())
    if include_bath:
        results.append(bath_suite())
    results.append(decay_rate_suite())
    results.extend(threshold_suite())
    return results
