"""Command-line front end: ``simulate``, ``bounds``, ``verify`` and ``sweep``.

Exit codes: 0 success, 1 usage or domain error, 2 verification failure,
3 I/O error, 4 bound reported infeasible.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

import numpy as np

from . import bounds, experiments
from .errors import HomogenizerError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VERIFY = 2
EXIT_IO = 3
EXIT_INFEASIBLE = 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="key = value configuration file; flags override it")
    p.add_argument("--protocol", choices=["pswap", "cswap"])
    p.add_argument("--eta", type=experiments.parse_angle, help="coupling, e.g. 0.3 or pi/8")
    p.add_argument("--N", "-N", dest="N", type=int, help="reservoir size")
    p.add_argument("--n", dest="n", type=int, help="number of systems passed through")
    p.add_argument("--system", help="initial system state: name or x,y,z")
    p.add_argument("--reservoir", help="reservoir state: name or x,y,z")
    p.add_argument("--metrics", help="comma list from fidelity,bloch_distance,entropy")
    p.add_argument("--seed", type=int)
    p.add_argument("--delta", type=float, help="error used for bound columns in sweeps")
    p.add_argument("--output", "-o", help="CSV path (default stdout)")


def _config_from_args(args) -> experiments.ExperimentConfig:
    file_values = experiments.read_config_file(args.config) if args.config else None
    metrics = None
    if args.metrics:
        metrics = tuple(m.strip() for m in args.metrics.split(",") if m.strip())
    return experiments.build_config(
        file_values,
        protocol=args.protocol,
        eta=args.eta,
        N=args.N,
        n=args.n,
        system0=experiments.parse_state(args.system) if args.system else None,
        reservoir0=experiments.parse_state(args.reservoir) if args.reservoir else None,
        metrics=metrics,
        seed=args.seed,
        delta=args.delta,
        output_path=args.output,
    )


def _emit(text: str, path: Optional[str]) -> None:
    if path:
        with open(path, "w", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def cmd_simulate(args) -> int:
    config = _config_from_args(args)
    _emit(experiments.simulate_csv(config), config.output_path)
    return EXIT_OK


def cmd_sweep(args) -> int:
    config = _config_from_args(args)
    axes = [experiments.parse_axis(a) for a in args.axis or []]
    text = experiments.sweep_csv(config, axes, max_rows=args.max_rows, jobs=args.jobs)
    _emit(text, config.output_path)
    return EXIT_OK


def _print_report(report: bounds.BoundReport, as_json: bool) -> None:
    data = report.as_dict()
    if as_json:
        print(json.dumps(data, default=str))
        return
    for key, value in data.items():
        print(f"{key}: {experiments.fmt(value) if value is not None else '-'}")


def cmd_bounds(args) -> int:
    if args.mode == "single":
        _need(args, "delta", "d")
        report = bounds.min_reservoir_single(args.delta, args.d)
        _print_report(report, args.json)
        return EXIT_OK if report.feasible else EXIT_INFEASIBLE
    if args.mode == "reuse":
        _need(args, "Delta", "d", "eta")
        n = args.n if args.n is not None else 1
        report = bounds.min_reservoir_reuse(args.Delta, args.d, args.eta, n)
        count = bounds.max_reuse_count(args.Delta, args.d, args.eta)
        _print_report(report, args.json)
        if not args.json:
            print()
        _print_report(count, args.json)
        return EXIT_OK if report.feasible else EXIT_INFEASIBLE

    fn = bounds.fidelity_gap_bound if args.variant == "printed" else bounds.measured_fidelity_gap
    if args.alpha is not None:
        value = fn(args.alpha)
        if args.json:
            print(json.dumps({"alpha": args.alpha, "gap": value, "variant": args.variant}))
        else:
            print(f"variant: {args.variant}\nalpha: {experiments.fmt(args.alpha)}\n"
                  f"gap: {experiments.fmt(value)}")
        return EXIT_OK
    try:
        start, stop, step = (float(x) for x in (args.scan or "0:1:0.001").split(":"))
    except ValueError as exc:
        raise UsageError(f"--scan expects start:stop:step, got {args.scan!r}") from exc
    xs, ys = bounds.scan(fn, start, stop, step)
    i = int(np.argmax(ys))
    if args.json:
        print(json.dumps({"variant": args.variant, "max_gap": float(ys[i]),
                          "argmax_alpha": float(xs[i]), "points": len(xs)}))
    else:
        print(f"variant: {args.variant}\npoints: {len(xs)}\n"
              f"max_gap: {experiments.fmt(float(ys[i]))}\n"
              f"argmax_alpha: {experiments.fmt(float(xs[i]))}")
    return EXIT_OK


def _need(args, *names: str) -> None:
    missing = [f"--{n}" for n in names if getattr(args, n) is None]
    if missing:
        raise UsageError(f"bounds {args.mode} requires {', '.join(missing)}")


def cmd_verify(args) -> int:
    scopes = list(experiments.VERIFY_SCOPES) if args.scope == "all" else [args.scope]
    failed = 0
    for scope, check in experiments.run_verify(scopes, seed=args.seed):
        print(f"{scope:8s} {check.line()}")
        failed += (not check.info) and (not check.passed)
    print(f"{'FAILED' if failed else 'OK'}: {failed} failing check(s)")
    return EXIT_VERIFY if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="homogenizer", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("simulate", help="write a per-interaction CSV trace")
    _add_config_flags(p)
    p.set_defaults(func=cmd_simulate)

    p = sub.add_parser("sweep", help="evaluate final metrics and bounds over a grid")
    _add_config_flags(p)
    p.add_argument("--axis", action="append",
                   help="name=start:stop:step or name=v1,v2 for eta, N, n, delta, d")
    p.add_argument("--max-rows", type=int, default=experiments.DEFAULT_MAX_ROWS)
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("bounds", help="evaluate closed-form resource bounds")
    p.add_argument("mode", choices=["single", "reuse", "fidelity-gap"])
    p.add_argument("--delta", type=float)
    p.add_argument("--Delta", type=float)
    p.add_argument("--d", type=float)
    p.add_argument("--eta", type=experiments.parse_angle)
    p.add_argument("--n", type=int)
    p.add_argument("--alpha", type=float)
    p.add_argument("--scan", help="start:stop:step for fidelity-gap")
    p.add_argument("--variant", choices=["printed", "measured"], default="printed")
    p.add_argument("--json", action="store_true", help="machine-readable output")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("verify", help="cross-check analytic maps against the oracle")
    p.add_argument("scope", nargs="?", default="all",
                   choices=["maps", "joint", "entropy", "bounds", "all"])
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command == "bounds" and args.mode == "reuse" and args.Delta is None:
            args.Delta = args.delta
        return args.func(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as exc:
        print(f"error: {exc.filename or ''}: {exc.strerror or exc}", file=sys.stderr)
        return EXIT_IO
    except (HomogenizerError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
