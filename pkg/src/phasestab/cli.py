"""Command-line front end: load field files, run certifications and sweeps,
emit machine-readable reports.

Subcommands and their report schemas (all floats use shortest round-trip
decimal formatting, so reports are byte-stable across runs):

* ``verify --f PATH --g PATH --p REAL [--zero-tol REAL] [--out PATH]
  [--format json|csv]`` - evaluates the stability bound.  JSON output is the
  flat BoundReport object (fields p, epsilon, lhs, term_modulus,
  term_smoothness, term_translation, rhs, slack, squared_form_slack) plus a
  "config" echo; CSV output is a header row of those field names and one value
  row.
* ``corollary1 --f PATH --g PATH [--support-tol REAL] [--out PATH]`` - the
  band-limited form; JSON fields epsilon, lhs, term_modulus, term_bandlimit,
  term_translation, support_measure, rhs, slack plus "config".
* ``lemma1 --radius-steps INT --angle-steps INT [--out PATH]`` - brute-force
  scan of the half-disk inequality; JSON {min_gap, argmin_z, steps, config}
  with argmin_z as [re, im].
* ``experiment --name {optimality,triangle,translation,tail} [--sweep
  CSV-list] [--grid-n INT] [--grid-extent REAL] [--k INT] [--n INT]
  [--out PREFIX]`` - runs the named sweep.  JSON {name, results: [ScalingResult
  ...], config}; with --out, each ScalingResult is also written to
  PREFIX.<result-name>.csv with header "parameter,observable".

Exit codes: 0 certified / pass, 1 usage or input error, 2 mathematical
certification failure.  All defaults are echoed into the "config" object of
every report.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .bounds import CERTIFICATION_RTOL, evaluate_corollary1, evaluate_theorem
from .experiments import (
    DEFAULT_SWEEPS,
    ScalingResult,
    optimality_experiment,
    tail_experiment,
    translation_experiment,
    triangle_experiment,
)
from .geometry import lemma1_scan
from .grid import GridSpec, SampledFunction
from .io import load_field, write_text_atomic

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_CERTIFICATION = 2

LEMMA1_GAP_FLOOR = -1e-12


def _emit(payload: dict, out: str | None, text: str | None = None) -> None:
    body = text if text is not None else json.dumps(payload, indent=2)
    if out:
        write_text_atomic(out, body + "\n")
    print(body)


def _load_pair(f_path: str, g_path: str):
    f = load_field(f_path)
    g = load_field(g_path)
    for name, field in (("--f", f), ("--g", g)):
        if not isinstance(field, SampledFunction):
            raise ValueError(f'{name}: expected a space-domain file (domain "space")')
    if f.grid != g.grid:
        raise ValueError("--f and --g are sampled on different grids")
    return f, g


def _report_csv(d: dict) -> str:
    keys = list(d)
    return ",".join(keys) + "\n" + ",".join(repr(float(d[k])) for k in keys)


def cmd_verify(args) -> int:
    f, g = _load_pair(args.f, args.g)
    report = evaluate_theorem(f, g, args.p, zero_tol=args.zero_tol)
    payload = report.to_dict()
    payload["config"] = {
        "f": args.f,
        "g": args.g,
        "p": args.p,
        "zero_tol": args.zero_tol,
        "certification_rtol": CERTIFICATION_RTOL,
        "version": __version__,
    }
    if args.format == "csv":
        _emit(payload, args.out, text=_report_csv(report.to_dict()))
    else:
        _emit(payload, args.out)
    certified = report.slack >= -CERTIFICATION_RTOL * report.rhs
    return EXIT_OK if certified else EXIT_CERTIFICATION


def cmd_corollary1(args) -> int:
    f, g = _load_pair(args.f, args.g)
    report = evaluate_corollary1(f, g, support_tol=args.support_tol)
    payload = report.to_dict()
    payload["config"] = {
        "f": args.f,
        "g": args.g,
        "support_tol": args.support_tol,
        "certification_rtol": CERTIFICATION_RTOL,
        "version": __version__,
    }
    _emit(payload, args.out)
    return EXIT_OK if report.slack >= -CERTIFICATION_RTOL * report.rhs else EXIT_CERTIFICATION


def cmd_lemma1(args) -> int:
    scan = lemma1_scan(args.radius_steps, args.angle_steps)
    payload = {
        "min_gap": scan.min_gap,
        "argmin_z": [scan.argmin_z.real, scan.argmin_z.imag],
        "steps": [scan.radius_steps, scan.angle_steps],
        "config": {"gap_floor": LEMMA1_GAP_FLOOR, "version": __version__},
    }
    _emit(payload, args.out)
    return EXIT_OK if scan.min_gap >= LEMMA1_GAP_FLOOR else EXIT_CERTIFICATION


def _experiment_grid(args) -> GridSpec | None:
    if args.grid_n is None and args.grid_extent is None:
        return None
    if args.grid_n is None or args.grid_extent is None:
        raise ValueError("--grid-n and --grid-extent must be given together")
    dimension = args.n if args.name == "tail" else 1
    return GridSpec.uniform(dimension, args.grid_extent, args.grid_n)


def cmd_experiment(args) -> int:
    grid = _experiment_grid(args)
    sweep = args.sweep
    if args.name == "optimality":
        results, _ = optimality_experiment(sweep, grid=grid)
    elif args.name == "triangle":
        results = [triangle_experiment(amplitudes=sweep, grid=grid)]
    elif args.name == "translation":
        results = [translation_experiment(epsilons=sweep, grid=grid)]
    elif args.name == "tail":
        results = [tail_experiment(args.k, args.n, epsilons=sweep, grid=grid)]
    else:  # pragma: no cover - argparse choices guard this
        raise ValueError(f"unknown experiment {args.name!r}")
    payload = {
        "name": args.name,
        "results": [r.to_dict() for r in results],
        "config": {
            "sweep": list(sweep) if sweep is not None else list(DEFAULT_SWEEPS[args.name]),
            "grid_n": args.grid_n,
            "grid_extent": args.grid_extent,
            "k": args.k if args.name == "tail" else None,
            "n": args.n if args.name == "tail" else None,
            "version": __version__,
        },
    }
    _emit(payload, f"{args.out}.json" if args.out else None)
    if args.out:
        for result in results:
            _write_result_csv(Path(f"{args.out}.{result.name}.csv"), result)
    return EXIT_OK if all(r.passed for r in results) else EXIT_CERTIFICATION


def _write_result_csv(path: Path, result: ScalingResult) -> None:
    rows = ["parameter,observable"]
    rows += [
        f"{x!r},{y!r}" for x, y in zip(result.parameter_values, result.observable_values)
    ]
    write_text_atomic(path, "\n".join(rows) + "\n")


def _csv_floats(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(",") if part.strip())
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"not a comma-separated float list: {text!r}") from exc
    if not values:
        raise argparse.ArgumentTypeError("sweep list is empty")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="phasestab",
        description="Certify and stress-test Fourier phase retrieval stability bounds.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_verify = sub.add_parser("verify", help="evaluate the stability bound for two function files")
    p_verify.add_argument("--f", required=True, help="path of the reference function file")
    p_verify.add_argument("--g", required=True, help="path of the comparison function file")
    p_verify.add_argument("--p", required=True, type=float, help="exponent in [1, 2)")
    p_verify.add_argument("--zero-tol", type=float, default=None, dest="zero_tol")
    p_verify.add_argument("--out", default=None, help="write the report here as well")
    p_verify.add_argument("--format", choices=("json", "csv"), default="json")
    p_verify.set_defaults(run=cmd_verify)

    p_cor = sub.add_parser("corollary1", help="evaluate the band-limited form of the bound")
    p_cor.add_argument("--f", required=True)
    p_cor.add_argument("--g", required=True)
    p_cor.add_argument("--support-tol", type=float, default=None, dest="support_tol")
    p_cor.add_argument("--out", default=None)
    p_cor.set_defaults(run=cmd_corollary1)

    p_lem = sub.add_parser("lemma1", help="brute-force scan of the half-disk inequality")
    p_lem.add_argument("--radius-steps", required=True, type=int, dest="radius_steps")
    p_lem.add_argument("--angle-steps", required=True, type=int, dest="angle_steps")
    p_lem.add_argument("--out", default=None)
    p_lem.set_defaults(run=cmd_lemma1)

    p_exp = sub.add_parser("experiment", help="run a named scaling experiment")
    p_exp.add_argument(
        "--name", required=True, choices=("optimality", "triangle", "translation", "tail")
    )
    p_exp.add_argument("--sweep", type=_csv_floats, default=None)
    p_exp.add_argument("--grid-n", type=int, default=None, dest="grid_n")
    p_exp.add_argument("--grid-extent", type=float, default=None, dest="grid_extent")
    p_exp.add_argument("--k", type=int, default=2, help="decay order for the tail experiment")
    p_exp.add_argument("--n", type=int, default=1, help="dimension for the tail experiment")
    p_exp.add_argument("--out", default=None, help="output prefix for JSON and CSV files")
    p_exp.set_defaults(run=cmd_experiment)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; remap onto the input-error code
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.run(args)
    except (ValueError, TypeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ArithmeticError as exc:
        print(f"certification failure: {exc}", file=sys.stderr)
        return EXIT_CERTIFICATION


if __name__ == "__main__":
    sys.exit(main())
