"""Tables behind the four figures, the generic sweep and the thresholds.

Each builder returns a :class:`Table`; grids are evaluated with vectorized
numpy, row order follows the grid.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import IO, Any

import numpy as np

from . import model, witnesses

REPORTED_THRESHOLDS = {"bell": 1.601, "fidelity": 1.228}


@dataclass(frozen=True)
class Grid:
    start: float
    stop: float
    points: int

    def __post_init__(self):
        if self.points < 2:
            raise ValueError("grid needs at least 2 points")
        if not self.start < self.stop:
            raise ValueError("grid start must be below stop")

    def values(self) -> np.ndarray:
        return np.linspace(self.start, self.stop, self.points)

    def as_dict(self):
        return {"start": self.start, "stop": self.stop, "points": self.points}


@dataclass
class Table:
    columns: list[str]
    rows: list[tuple]
    params: dict[str, Any] = field(default_factory=dict)

    def column(self, name) -> np.ndarray:
        i = self.columns.index(name)
        return np.array([r[i] for r in self.rows])


def _fmt(x) -> str:
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    return str(x)


def write_csv(table: Table, fh: IO[str]) -> None:
    fh.write("# " + ",".join(table.columns) + "\n")
    fh.write("# params: " + json.dumps(table.params, sort_keys=True) + "\n")
    for row in table.rows:
        fh.write(",".join(_fmt(x) for x in row) + "\n")


def write_json(table: Table, fh: IO[str]) -> None:
    rows = [[float(x) if isinstance(x, (float, np.floating)) else x for x in row] for row in table.rows]
    json.dump({"columns": table.columns, "params": table.params, "rows": rows}, fh, sort_keys=True)
    fh.write("\n")


def _rows(*cols) -> list[tuple]:
    return [tuple(float(c) if not isinstance(c, str) else c for c in row) for row in zip(*cols)]


def fig1(n=3, alpha2=3.0, grid=Grid(0.0, 2 * np.pi, 1000)) -> Table:
    """B (theta = aligned Bell phase) and F (theta = gamma = pi/2) against time, G = 1."""
    ctx = witnesses.QubitCountContext.cavity_and_excitons(n)
    beta = witnesses.aligned_bell_phase(ctx.m_qubits)
    t = grid.values()
    # the amplitudes do not depend on theta
    aset = model.lossless_amplitudes(model.SystemConfig.equal(n, alpha=np.sqrt(alpha2)), t)
    b = witnesses.bell_quantity(witnesses.bell_expectation(aset, beta, ctx), ctx)
    f = witnesses.fidelity_f(aset, np.pi / 2, np.pi / 2, ctx)
    params = {"scenario": "fig1", "n": n, "alpha2": alpha2, "big_g": 1.0,
              "theta_bell": beta, "theta_fidelity": np.pi / 2, "gamma": np.pi / 2, "grid": grid.as_dict()}
    return Table(["t", "B", "F"], _rows(t, b, f), params)


def fig2(alpha2=0.9, theta=np.pi, ns=(2, 3, 5), grid=Grid(0.0, 2 * np.pi, 1000)) -> Table:
    """tau against time for several exciton numbers, equal couplings, G = 1."""
    t = grid.values()
    cols = [t]
    for n in ns:
        cfg = model.SystemConfig.equal(n, alpha=np.sqrt(alpha2), theta=theta)
        cols.append(witnesses.tau(model.lossless_amplitudes(cfg, t), theta,
                                  witnesses.QubitCountContext.cavity_and_excitons(n)))
    params = {"scenario": "fig2", "ns": list(ns), "alpha2": alpha2, "theta": theta, "big_g": 1.0,
              "grid": grid.as_dict()}
    return Table(["t"] + [f"tau_N{n}" for n in ns], _rows(*cols), params)


def fig3(n=5, theta=np.pi, grid=Grid(0.0, 4.0, 401)) -> Table:
    """Exciton-only B, F and tau against |alpha|."""
    a = grid.values()
    b, f, t2 = witnesses.exciton_curves(a, n, theta)
    params = {"scenario": "fig3", "n": n, "theta": theta, "grid": grid.as_dict()}
    return Table(["alpha_abs", "B", "F", "tau"], _rows(a, b, f, t2), params)


def fig4(alpha2=3.0, g=1.0, gamma_rate=0.5, ns=(2, 3, 4), grid=Grid(0.0, 10.0, 1001)) -> Table:
    """Dissipative F = 2 fidelity - 1 against time for several exciton numbers."""
    t = grid.values()
    cols = [t]
    for n in ns:
        coeffs = model.decay_coefficients(model.DecayConfig(gamma_rate, g, n), t)
        cols.append(witnesses.dissipative_fidelity_f(np.sqrt(alpha2), coeffs, n))
    params = {"scenario": "fig4", "ns": list(ns), "alpha2": alpha2, "g": g, "gamma_rate": gamma_rate,
              "grid": grid.as_dict()}
    return Table(["t"] + [f"F_N{n}" for n in ns], _rows(*cols), params)


def sweep(cfg: model.SystemConfig, grid: Grid, ghz_phase=np.pi / 2) -> Table:
    """All indicators of the cavity + exciton state at the configured theta."""
    t = grid.values()
    aset = model.lossless_amplitudes(cfg, t)
    reports = witnesses.witness_report(aset, cfg.theta, abs(cfg.alpha) ** 2, gamma=ghz_phase)
    rows = [(r.time, r.bell_q, r.fidelity_f, r.tau, r.mean_photon) for r in reports]
    params = {"scenario": "sweep", "n": cfg.n_excitons, "couplings": list(cfg.couplings),
              "omega": cfg.omega, "alpha": [cfg.alpha.real, cfg.alpha.imag], "theta": cfg.theta,
              "ghz_phase": ghz_phase, "grid": grid.as_dict()}
    return Table(["t", "B", "F", "tau", "mean_photon"], rows, params)


def thresholds(n=5, lo=1.0, hi=2.5, tol=1e-6) -> Table:
    rows = []
    for metric in ("bell", "fidelity"):
        root = witnesses.threshold(metric, n, lo, hi, tol)
        rows.append((metric, n, root, REPORTED_THRESHOLDS[metric] if n == 5 else float("nan")))
    params = {"scenario": "thresholds", "n": n, "lo": lo, "hi": hi, "tol": tol}
    return Table(["metric", "n", "threshold", "reported"], rows, params)
