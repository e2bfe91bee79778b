"""Command-line front end.

    ratbound certify INSTANCE.json THEOREM [--k K] [--grid N]
    ratbound campaign --theorem THEOREM --n N --t T [--k K] [--count C]
                      [--seed S] [--grid N] [--p-boundary P] [--out FILE]
    ratbound curves INSTANCE.json THEOREM OUT.csv [--k K] [--grid N]

Instance files are JSON objects with "poles", "zeros" (lists of
[re, im] pairs), "leading" ([re, im]) and an optional "k".  The
default grid count honours the RATBOUND_GRID environment variable.
Exit codes: 0 bound held, 1 unusable input, 2 violation found,
3 hypotheses not satisfied, 4 degenerate bound expression.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .bounds import TheoremId, certify, margin_curve
from .circlescan import DEFAULT_GRID_COUNT, CircleGrid
from .errors import DegenerateBound, HypothesisViolated, ParseError, RatboundError
from .harness import GeneratorSpec, instance_from_dict, run_campaign
from .ratfun import ZeroLocation

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_VIOLATION = 2
EXIT_HYPOTHESIS = 3
EXIT_DEGENERATE = 4

THEOREM_NAMES = [member.value for member in TheoremId]


def _default_grid() -> int:
    raw = os.environ.get("RATBOUND_GRID")
    if raw is None:
        return DEFAULT_GRID_COUNT
    try:
        count = int(raw)
    except ValueError:
        raise ParseError(f"RATBOUND_GRID={raw!r} is not an integer")
    if count < 64 or count & (count - 1):
        raise ParseError(f"RATBOUND_GRID={count} must be a power of two, at least 64")
    return count


def _load_instance(path: str):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path} is not valid JSON: {exc}")
    try:
        return instance_from_dict(doc)
    except (KeyError, TypeError, ValueError, RatboundError) as exc:
        raise ParseError(f"{path} is not a valid instance: {exc}")


def _theorem(name: str) -> TheoremId:
    try:
        return TheoremId.from_name(name)
    except KeyError:
        raise ParseError(f"unknown theorem {name!r}; choose from {', '.join(THEOREM_NAMES)}")


def _fmt(x: float) -> str:
    return f"{x:.17g}"


def cmd_certify(args) -> int:
    r, file_k = _load_instance(args.instance)
    theorem = _theorem(args.theorem)
    k = args.k if args.k is not None else (file_k if file_k is not None else 1.0)
    grid = CircleGrid(k, args.grid)
    try:
        verdict = certify(theorem, r, grid)
    except HypothesisViolated as exc:
        print(f"hypothesis: {exc}")
        return EXIT_HYPOTHESIS
    except DegenerateBound as exc:
        print(f"degenerate: {exc}")
        return EXIT_DEGENERATE
    ctx = verdict.context
    print(f"theorem      {theorem.value}")
    print(f"poles n      {ctx.n}")
    print(f"zeros t      {ctx.t}")
    print(f"radius k     {_fmt(ctx.k)}")
    print(f"sup |r|      {_fmt(ctx.norm)}")
    print(f"min modulus  {_fmt(ctx.m)}")
    print(f"min margin   {_fmt(verdict.min_margin)}")
    print(f"worst theta  {_fmt(verdict.worst_theta)}")
    print(f"violations   {verdict.violations}")
    print(f"skipped      {verdict.skipped_points}")
    return EXIT_OK if verdict.violations == 0 else EXIT_VIOLATION


def cmd_campaign(args) -> int:
    theorem = _theorem(args.theorem)
    grid = CircleGrid(args.k, args.grid)
    from .bounds import hypothesis_zero_location, profile

    region = hypothesis_zero_location(theorem, args.k)
    p_boundary = args.p_boundary
    if profile(theorem).needs_boundary_zero and p_boundary == 0.0:
        p_boundary = 1.0
    spec = GeneratorSpec(
        n=args.n,
        t=args.t if args.t is not None else args.n,
        zero_region=region,
        seed=args.seed,
        count=args.count,
        pole_annulus=(args.pole_min, args.pole_max),
        p_boundary=p_boundary,
    )
    report = run_campaign(spec, theorem, grid)
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(report.to_json())
    print(
        f"{theorem.value}: {report.certified}/{report.instances} certified, "
        f"{report.violations} violations, {report.degenerate_count} degenerate -> {args.out}"
    )
    return EXIT_OK if report.violations == 0 else EXIT_VIOLATION


def cmd_curves(args) -> int:
    r, file_k = _load_instance(args.instance)
    theorem = _theorem(args.theorem)
    k = args.k if args.k is not None else (file_k if file_k is not None else 1.0)
    try:
        thetas, deriv_abs, rhs, margin = margin_curve(theorem, r, CircleGrid(k, args.grid))
    except HypothesisViolated as exc:
        print(f"hypothesis: {exc}")
        return EXIT_HYPOTHESIS
    except DegenerateBound as exc:
        print(f"degenerate: {exc}")
        return EXIT_DEGENERATE
    try:
        with open(args.out, "w", encoding="utf-8", newline="") as fh:
            fh.write("theta,deriv_modulus,bound_rhs,margin\n")
            for row in zip(thetas, deriv_abs, rhs, margin):
                fh.write(",".join(_fmt(float(x)) for x in row) + "\n")
    except OSError as exc:
        print(f"cannot write {args.out}: {exc}")
        return EXIT_USAGE
    print(f"{len(thetas)} rows -> {args.out}")
    return EXIT_OK


def _build_parser(default_grid: int) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ratbound", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    cert = sub.add_parser("certify", help="sweep one inequality over one instance")
    cert.add_argument("instance", help="JSON instance file")
    cert.add_argument("theorem", help=f"one of: {', '.join(THEOREM_NAMES)}")
    cert.add_argument("--k", type=float, default=None, help="zero-region radius (default: file value or 1)")
    cert.add_argument("--grid", type=int, default=default_grid, help="grid count, power of two >= 64")
    cert.set_defaults(func=cmd_certify)

    camp = sub.add_parser("campaign", help="certify a reproducible random stream")
    camp.add_argument("--theorem", required=True)
    camp.add_argument("--n", type=int, required=True, help="pole count")
    camp.add_argument("--t", type=int, default=None, help="zero count (default n)")
    camp.add_argument("--k", type=float, default=1.0)
    camp.add_argument("--count", type=int, default=100)
    camp.add_argument("--seed", type=int, default=0)
    camp.add_argument("--grid", type=int, default=default_grid)
    camp.add_argument("--p-boundary", type=float, default=0.0, dest="p_boundary")
    camp.add_argument("--pole-min", type=float, default=1.1)
    camp.add_argument("--pole-max", type=float, default=3.0)
    camp.add_argument("--out", default="campaign-report.json")
    camp.set_defaults(func=cmd_campaign)

    curv = sub.add_parser("curves", help="write theta,deriv_modulus,bound_rhs,margin CSV")
    curv.add_argument("instance")
    curv.add_argument("theorem")
    curv.add_argument("out")
    curv.add_argument("--k", type=float, default=None)
    curv.add_argument("--grid", type=int, default=default_grid)
    curv.set_defaults(func=cmd_curves)
    return parser


def main(argv=None) -> int:
    try:
        default_grid = _default_grid()
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    parser = _build_parser(default_grid)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    grid = getattr(args, "grid", default_grid)
    if grid < 64 or grid & (grid - 1):
        print(f"--grid {grid} must be a power of two, at least 64", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.func(args)
    except ParseError as exc:
        print(str(exc), file=sys.stderr)
        return EXIT_USAGE
    except RatboundError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


def console_main():
    raise SystemExit(main())


if __name__ == "__main__":
    console_main()
