"""Command-line front end.

    qdcavity fig1|fig2|fig3|fig4|sweep|thresholds|validate [options]

Exit status: 0 success, 1 validation failure, 2 bad arguments.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import figures, model, validation
from .errors import QDCavityError

SCENARIOS = ("fig1", "fig2", "fig3", "fig4", "sweep", "thresholds", "validate")

DEFAULT_GRIDS = {
    "fig1": "0:2pi:1000",
    "fig2": "0:2pi:1000",
    "fig3": "0:4:401",
    "fig4": "0:10:1001",
    "sweep": "0:2pi:1000",
}


class UsageError(Exception):
    pass


def parse_number(text: str) -> float:
    """Float, optionally with a trailing ``pi`` factor: ``2pi``, ``0.5*pi``, ``pi``."""
    s = str(text).strip().lower().replace("*", "")
    if s.endswith("pi"):
        head = s[:-2]
        factor = 1.0 if head in ("", "+") else -1.0 if head == "-" else float(head)
        return factor * np.pi
    return float(s)


def parse_grid(text: str, tmax=None) -> figures.Grid:
    parts = str(text).split(":")
    if len(parts) != 3:
        raise UsageError(f"grid must be start:stop:points, got {text!r}")
    start, stop = parse_number(parts[0]), parse_number(parts[1])
    if tmax is not None:
        stop = float(tmax)
    try:
        return figures.Grid(start, stop, int(parts[2]))
    except ValueError as exc:
        raise UsageError(str(exc)) from exc


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", help="JSON file of option defaults; flags override it")
    common.add_argument("--n", type=int, help="number of excitons")
    common.add_argument("--ns", help="comma-separated exciton numbers (fig2, fig4)")
    common.add_argument("--alpha2", type=float, help="|alpha|^2 of the initial cat")
    common.add_argument("--theta", type=parse_number, help="cat phase theta (accepts e.g. 'pi')")
    common.add_argument("--gamma-rate", type=float, help="exciton decay rate Gamma (fig4)")
    common.add_argument("--g", type=float, help="per-exciton coupling g (fig4)")
    common.add_argument("--couplings", help="comma-separated couplings g_n (sweep)")
    common.add_argument("--omega", type=float, help="mode frequency (sweep)")
    common.add_argument("--ghz-phase", type=parse_number, help="GHZ reference phase gamma (sweep)")
    common.add_argument("--grid", help="start:stop:points")
    common.add_argument("--tmax", type=float, help="override grid stop time (fig4)")
    common.add_argument("--lo", type=float, help="threshold bracket low end")
    common.add_argument("--hi", type=float, help="threshold bracket high end")
    common.add_argument("--tol", type=float, help="threshold tolerance")
    common.add_argument("--out", help="output file (default: stdout)")
    common.add_argument("--format", choices=("csv", "json"), help="output format (default csv)")

    parser = argparse.ArgumentParser(prog="qdcavity", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "fig1": "B and F against time (N=3, |alpha|^2=3)",
        "fig2": "tau against time for N=2,3,5 (|alpha|^2=0.9, theta=pi)",
        "fig3": "exciton-only B, F, tau against |alpha| (N=5)",
        "fig4": "dissipative F against time for N=2,3,4 (Gamma=0.5)",
        "sweep": "all indicators against time for a custom configuration",
        "thresholds": "|alpha| at which B and F change sign",
        "validate": "run the oracle-equivalence suites",
    }
    for name in SCENARIOS:
        sub.add_parser(name, parents=[common], help=helps[name])
    return parser


def _merged_options(args) -> dict:
    opts = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        opts.update({k.replace("-", "_"): v for k, v in loaded.items()})
    for key, val in vars(args).items():
        if val is not None and key not in ("config", "command"):
            opts[key] = val
    for key in ("theta", "ghz_phase"):
        if key in opts:
            opts[key] = parse_number(opts[key])
    return opts


def _int_list(text, default):
    if text is None:
        return default
    if isinstance(text, (list, tuple)):
        return tuple(int(x) for x in text)
    return tuple(int(x) for x in str(text).split(","))


def build_table(command: str, opts: dict) -> figures.Table:
    grid = None
    if command in DEFAULT_GRIDS:
        grid = parse_grid(opts.get("grid", DEFAULT_GRIDS[command]), opts.get("tmax"))
    if command == "fig1":
        return figures.fig1(n=opts.get("n", 3), alpha2=opts.get("alpha2", 3.0), grid=grid)
    if command == "fig2":
        return figures.fig2(alpha2=opts.get("alpha2", 0.9), theta=opts.get("theta", np.pi),
                            ns=_int_list(opts.get("ns"), (2, 3, 5)), grid=grid)
    if command == "fig3":
        return figures.fig3(n=opts.get("n", 5), theta=opts.get("theta", np.pi), grid=grid)
    if command == "fig4":
        return figures.fig4(alpha2=opts.get("alpha2", 3.0), g=opts.get("g", 1.0),
                            gamma_rate=opts.get("gamma_rate", 0.5),
                            ns=_int_list(opts.get("ns"), (2, 3, 4)), grid=grid)
    if command == "sweep":
        n = opts.get("n", 3)
        alpha = np.sqrt(opts.get("alpha2", 3.0))
        theta = opts.get("theta", np.pi / 2)
        omega = opts.get("omega", 0.0)
        if "couplings" in opts:
            raw = opts["couplings"]
            couplings = [float(x) for x in (raw if isinstance(raw, list) else str(raw).split(","))]
            cfg = model.SystemConfig(len(couplings), couplings, omega=omega, alpha=alpha, theta=theta)
        else:
            cfg = model.SystemConfig.equal(n, alpha=alpha, theta=theta, omega=omega)
        return figures.sweep(cfg, grid, ghz_phase=opts.get("ghz_phase", np.pi / 2))
    if command == "thresholds":
        return figures.thresholds(n=opts.get("n", 5), lo=opts.get("lo", 1.0),
                                  hi=opts.get("hi", 2.5), tol=opts.get("tol", 1e-6))
    raise UsageError(f"unknown command {command}")


def emit(table: figures.Table, opts: dict) -> None:
    writer = figures.write_json if opts.get("format", "csv") == "json" else figures.write_csv
    out = opts.get("out")
    if out is None:
        writer(table, sys.stdout)
        return
    try:
        with open(out, "w", newline="") as fh:
            writer(table, fh)
    except OSError as exc:
        raise UsageError(f"cannot write {out}: {exc}") from exc


def run_validate(out=None) -> int:
    out = sys.stdout if out is None else out
    results = validation.run_all()
    for r in results:
        print(r.line(), file=out)
    failed = [r for r in results if not r.passed]
    print(f"{len(results) - len(failed)}/{len(results)} suites passed", file=out)
    return 1 if failed else 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        opts = _merged_options(args)
        if args.command == "validate":
            return run_validate()
        emit(build_table(args.command, opts), opts)
    except (UsageError, QDCavityError, ValueError) as exc:
        print(f"qdcavity {args.command}: error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
