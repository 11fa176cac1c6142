"""Command line entry point: ``spinring <experiment> [options]``.

Exit codes: 0 success, 1 invalid config, 2 solver non-convergence,
3 property-suite failure.
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from .errors import ConvergenceError
from .experiments import (
    ConfigError,
    ExperimentConfig,
    SolverSettings,
    load_config,
    run_fig1,
    run_fig3,
    run_long_range,
    run_properties,
    run_sweep,
    run_table1,
)
from .experiments.config import EXPERIMENTS, LARGE_SIZES
from .experiments.output import render
from .experiments.runners import FIG1_SIZES, FIG3_AMPLITUDES, FIG3_SIZES, TABLE1_SIZES

EXIT_OK, EXIT_CONFIG, EXIT_SOLVER, EXIT_PROPERTIES = 0, 1, 2, 3

DEFAULT_SIZES = {
    "fig1": list(FIG1_SIZES),
    "table1": list(TABLE1_SIZES),
    "fig3": list(FIG3_SIZES),
    "longrange": [12, 16],
    "sweep": [8, 10, 12],
    "properties": [],
}

log = logging.getLogger("spinring")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="spinring", description=__doc__.splitlines()[0])
    p.add_argument("experiment", nargs="?", choices=EXPERIMENTS, help="experiment to run")
    p.add_argument("--config", help="JSON config file; command-line flags override its fields")
    p.add_argument("--n-sites", type=int, nargs="+", help="ring sizes N")
    p.add_argument("--delta", type=float, help="anisotropy (0 = XY, 1 = isotropic)")
    p.add_argument("--profile", help='coupling profile as JSON, e.g. \'{"kind": "cosine", "J": 1, "amplitude": 0.5, "harmonic": 1}\'')
    p.add_argument("--amplitudes", type=float, nargs="+", help="modulation amplitudes A for fig3 / longrange")
    p.add_argument("--tol", type=float, help="Lanczos residual tolerance")
    p.add_argument("--max-iter", type=int, help="Lanczos iteration cap")
    p.add_argument("--seed", type=int, help="seed of the Lanczos start vector")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--large", action="store_true", help="allow N = 22, 24 in table1")
    p.add_argument("--quick", action="store_true", help="restrict the property suite to N <= 12")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def config_from_args(args) -> ExperimentConfig:
    if args.config:
        cfg = load_config(args.config).to_dict()
    else:
        if not args.experiment:
            raise ConfigError("name an experiment or pass --config")
        cfg = {"experiment": args.experiment}
    if args.experiment:
        cfg["experiment"] = args.experiment
    exp = cfg["experiment"]
    if args.n_sites:
        cfg["Ns"] = args.n_sites
    elif not cfg.get("Ns"):
        cfg["Ns"] = list(DEFAULT_SIZES.get(exp, []))
        if exp == "table1" and args.large:
            cfg["Ns"] += list(LARGE_SIZES)
    if args.profile:
        try:
            cfg["profile"] = json.loads(args.profile)
        except json.JSONDecodeError as exc:
            raise ConfigError(f"--profile is not valid JSON: {exc}") from exc
    if args.delta is not None:
        cfg["delta"] = args.delta
    solver = dict(cfg.get("solver", {}))
    for key, val in (("tol", args.tol), ("max_iter", args.max_iter), ("seed", args.seed)):
        if val is not None:
            solver[key] = val
    cfg["solver"] = solver
    if args.amplitudes:
        cfg["amplitudes"] = args.amplitudes
    cfg["large"] = cfg.get("large", False) or args.large
    cfg["quick"] = cfg.get("quick", False) or args.quick
    if args.out:
        cfg["output"] = args.out
    return ExperimentConfig.from_dict(cfg)


def run(cfg: ExperimentConfig):
    """Dispatch to a runner; returns (ResultTable, exit code)."""
    solver = cfg.solver
    exp = cfg.experiment
    if exp == "properties":
        report = run_properties(quick=cfg.quick, seed=solver.seed)
        table = report.to_table()
        code = EXIT_OK if report.passed else EXIT_PROPERTIES
    elif exp == "fig1":
        table, code = run_fig1(cfg.Ns, delta=cfg.delta, solver=solver), EXIT_OK
    elif exp == "table1":
        table = run_table1(cfg.Ns, solver=solver)
        code = EXIT_SOLVER if table.failed_rows else EXIT_OK
    elif exp == "fig3":
        table, code = run_fig3(cfg.Ns, cfg.amplitudes or FIG3_AMPLITUDES, solver=solver), EXIT_OK
    elif exp == "longrange":
        table, code = run_long_range(cfg.Ns, cfg.amplitudes or (0.95,), solver=solver), EXIT_OK
    else:
        table, code = run_sweep(cfg.Ns, cfg.profile_obj(), cfg.delta, solver=solver), EXIT_OK
    table.config = cfg.to_dict()
    return table, code


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    try:
        cfg = config_from_args(args)
    except (ConfigError, ValueError) as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    try:
        table, code = run(cfg)
    except ConvergenceError as exc:
        print(f"solver did not converge: {exc}", file=sys.stderr)
        return EXIT_SOLVER
    except ValueError as exc:
        print(f"invalid config: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    text = render(table, args.format)
    if cfg.output:
        Path(cfg.output).write_text(text)
    else:
        sys.stdout.write(text)
    for name, ok in table.checks.items():
        log.info("check %-55s %s", name, "PASS" if ok else "FAIL")
    return code


if __name__ == "__main__":
    sys.exit(main())
