"""Command-line front end.

Three subcommands: ``outage`` evaluates a single scenario file by any
method, ``sweep`` writes a parameter-study CSV (plus a rendered figure) for
a preset or a sweep file, and ``validate`` cross-checks the methods against
each other on randomized instances.

Exit codes: 0 success, 1 validation failure, 2 input error, 3 numeric-domain
error.
"""

from __future__ import annotations

import argparse
import os
import sys

from .analytic import (
    METHOD_QUADRATURE,
    VARIANT_CORRECTED,
    VARIANT_PAPER,
    VARIANTS,
    OutageResult,
    pout_rayleigh,
)
from .montecarlo import McConfig, sample_outage
from .orderstat import REGION_ORDERED, REGION_PAPER_BOUNDS, pout_quadrature
from .scenario import ScenarioFormatError, linearize, load_scenario
from .sweep import PRESETS, load_sweep, run_preset, run_sweep, write_sweep_csv
from .validation import format_table, run_validation, write_validation_csv

EXIT_OK = 0
EXIT_VALIDATION_FAILED = 1
EXIT_INPUT_ERROR = 2
EXIT_NUMERIC_ERROR = 3


def _add_mc_flags(parser):
    parser.add_argument("--samples", type=int, default=1_000_000, help="Monte Carlo sample count")
    parser.add_argument("--seed", type=int, default=0, help="Monte Carlo stream seed")
    parser.add_argument("--workers", type=int, default=1, help="parallel sampling workers")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="noma-outage",
        description="Outage probability of uplink power-domain NOMA with SIC",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_out = sub.add_parser("outage", help="evaluate one scenario file")
    p_out.add_argument("scenario", help="path to a scenario JSON file")
    p_out.add_argument("--variant", choices=list(VARIANTS), default=VARIANT_CORRECTED)
    p_out.add_argument("--method", choices=["closed", "quad", "mc"], default="closed")
    p_out.add_argument("--tol", type=float, default=1e-8, help="quadrature error target")
    _add_mc_flags(p_out)

    p_sweep = sub.add_parser("sweep", help="run a parameter sweep to CSV (+ figure)")
    p_sweep.add_argument(
        "source", help=f"preset name ({', '.join(PRESETS)}) or path to a sweep JSON file"
    )
    p_sweep.add_argument("--out", required=True, help="output CSV path")
    p_sweep.add_argument(
        "--plot",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="render a PNG next to the CSV",
    )

    p_val = sub.add_parser("validate", help="cross-check methods on random instances")
    p_val.add_argument("--instances", type=int, default=6, help="number of random instances")
    p_val.add_argument("--out", default="validation_report.csv", help="output CSV path")
    p_val.add_argument(
        "--plot",
        action=argparse.BooleanOptionalAction,
        default=True,
        help="render a PNG next to the CSV",
    )
    _add_mc_flags(p_val)
    return parser


def _format_result(res: OutageResult) -> str:
    text = f"outage = {res.value:.6g}  (method={res.method}, variant={res.variant}"
    if res.stderr is not None:
        text += f", stderr={res.stderr:.3g}"
    return text + ")"


def _cmd_outage(args) -> int:
    try:
        spec = load_scenario(args.scenario)
    except (ScenarioFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    try:
        lin = linearize(spec)
        if args.method == "closed":
            res = pout_rayleigh(lin.means, lin.pthres_linear, args.variant)
        elif args.method == "quad":
            # the region is the quadrature analogue of the variant
            region = REGION_ORDERED if args.variant == VARIANT_CORRECTED else REGION_PAPER_BOUNDS
            value = pout_quadrature(lin.means, lin.pthres_linear, region, args.tol)
            res = OutageResult(value=value, method=METHOD_QUADRATURE, variant=region)
        else:
            if args.variant == VARIANT_PAPER:
                print("error: Monte Carlo has no 'paper' variant", file=sys.stderr)
                return EXIT_INPUT_ERROR
            cfg = McConfig(samples=args.samples, seed=args.seed, workers=args.workers)
            res = sample_outage(lin.means, lin.pthres_linear, cfg)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    print(_format_result(res))
    return EXIT_OK


def _plot_path(csv_path: str) -> str:
    root, _ = os.path.splitext(csv_path)
    return root + ".png"


def _cmd_sweep(args) -> int:
    try:
        if args.source in PRESETS:
            curves_rows = run_preset(args.source)
        else:
            curves_rows = run_sweep(load_sweep(args.source))
    except (ScenarioFormatError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    try:
        write_sweep_csv(curves_rows, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    labels = {r.curve_label for r in curves_rows}
    print(f"wrote {args.out} ({len(curves_rows)} rows, {len(labels)} curves)")
    if args.plot:
        from . import plots

        png = _plot_path(args.out)
        plots.render_sweep(curves_rows, png, title=args.source)
        print(f"wrote {png}")
    return EXIT_OK


def _cmd_validate(args) -> int:
    try:
        report = run_validation(
            n_instances=args.instances,
            seed=args.seed,
            samples=args.samples,
            workers=args.workers,
        )
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC_ERROR
    print(format_table(report))
    try:
        write_validation_csv(report, args.out)
    except OSError as exc:
        print(f"error: cannot write {args.out}: {exc}", file=sys.stderr)
        return EXIT_INPUT_ERROR
    print(f"wrote {args.out}")
    if args.plot:
        from . import plots

        png = _plot_path(args.out)
        plots.render_validation(report, png)
        print(f"wrote {png}")
    return EXIT_OK if report.passed else EXIT_VALIDATION_FAILED


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.command == "outage":
        return _cmd_outage(args)
    if args.command == "sweep":
        return _cmd_sweep(args)
    return _cmd_validate(args)


def entrypoint() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
