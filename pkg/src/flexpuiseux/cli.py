"""Command-line front end.

Subcommands
-----------
expand
    Puiseux branches of a plane curve ``P(x, y) = 0`` at the origin.
branches
    Branches of the space curve defined by a system JSON file.
analyze
    Flex classes, highest real flex and local multiplicity of a framework
    or polynomial system.

Exit status is 0 on success, 2 for unusable input, 3 when a numerical
step fails and 4 when branches cannot be told apart at the requested
truncation order.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from fractions import Fraction

from . import __version__
from .exact_poly import PolynomialSyntaxError, UnboundVariableError, parse_polynomial
from .flexlab import (
    AnalysisConfig,
    ConstraintSystem,
    Framework,
    FrameworkError,
    analyze,
    build_constraints,
)
from .puiseux import CurveNotThroughOriginError, PuiseuxConfig, YAxisComponentError, expand_branches
from .spacecurve import AmbiguousLiftError, lift_branches

EXIT_OK, EXIT_INPUT, EXIT_NUMERIC, EXIT_AMBIGUOUS = 0, 2, 3, 4


class InputError(Exception):
    pass


def _read_text(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    try:
        with open(arg, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {arg}: {exc.strerror}") from exc


def _load_json(arg: str) -> dict:
    try:
        return json.loads(_read_text(arg))
    except json.JSONDecodeError as exc:
        raise InputError(f"invalid JSON: {exc}") from exc


def _load_system(data: dict, mode: str) -> ConstraintSystem:
    if mode == "auto":
        mode = "framework" if "knots" in data else "system"
    try:
        if mode == "framework":
            return build_constraints(Framework.from_json(data))
        return ConstraintSystem.from_json(data)
    except KeyError as exc:
        raise InputError(f"missing field {exc}") from exc


def _parse_lambda(text: str):
    index = None
    if ":" in text:
        head, text = text.split(":", 1)
        index = int(head)
    try:
        values = tuple(Fraction(x.strip()) for x in text.split(",") if x.strip())
    except (ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad lambda {text!r}") from exc
    return index, values


def _config(args) -> AnalysisConfig:
    lambdas = tuple(_parse_lambda(s) for s in (args.lam or []))
    remove = None
    if args.remove:
        remove = tuple(int(x) for item in args.remove for x in item.split(",") if x)
    try:
        return AnalysisConfig(
            truncation_order=args.trunc_order,
            samples=args.samples,
            seed=args.seed,
            tolerance=args.tol,
            degree_bound=args.degree_bound,
            explicit_lambdas=lambdas,
            remove=remove,
        )
    except ValueError as exc:
        raise InputError(str(exc)) from exc


def _branch_json(b) -> dict:
    out = b.to_json()
    out["multiplicity"] = b.multiplicity
    return out


def _write_plot_csv(path: str, branches, names, samples: int = 41, span: float = 0.5) -> None:
    """Points of the real part of each branch for t in [-span, span]."""
    with open(path, "w", newline="", encoding="utf-8") as fh:
        if not branches:
            return
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["branch", "t", *names])
        for idx, b in enumerate(branches, 1):
            for j in range(samples):
                t = -span + 2 * span * j / (samples - 1)
                row = [idx, f"{t:.6g}"]
                row += [f"{b.series[v].evaluate(t).real:.12g}" for v in names]
                writer.writerow(row)


def cmd_expand(args) -> int:
    text = _read_text("-") if args.poly == "-" else args.poly
    variables = tuple(v.strip() for v in args.vars.split(",")) if args.vars else None
    if variables is None:
        variables = ("x", "y")
    p = parse_polynomial(text, variables)
    base = args.base or variables[0]
    branches = expand_branches(p, base, args.trunc_order, PuiseuxConfig(tolerance=args.tol))
    if args.json:
        print(json.dumps([_branch_json(b) for b in branches], indent=2, sort_keys=True))
    else:
        for b in branches:
            extra = f"  [ramification {b.ramification}"
            if b.multiplicity > 1:
                extra += f", multiplicity {b.multiplicity}"
            print(f"{b.render()}{extra}]")
    return EXIT_OK


def cmd_branches(args) -> int:
    sys_ = _load_system(_load_json(args.input), args.mode)
    branches = lift_branches(
        list(sys_.generators), args.base, args.trunc_order, PuiseuxConfig(tolerance=args.tol)
    )
    if args.plot_csv:
        _write_plot_csv(args.plot_csv, branches, sys_.variables)
    if args.json:
        print(json.dumps([_branch_json(b) for b in branches], indent=2, sort_keys=True))
    else:
        for b in branches:
            print(f"{b.render()}  [order {b.order()}]")
    return EXIT_OK


def _table(report) -> str:
    lines = ["k  n    removed  lambda"]
    for c in report.classes:
        d = c.to_json()
        lam = "-" if d["lambda"] is None else ",".join(d["lambda"])
        removed = "-" if d["removed"] is None else str(d["removed"])
        lines.append(f"{d['k']:<2} {str(d['n']):<4} {removed:<8} {lam}")
    data = report.to_json()
    real = data["real"]
    kmax = "-" if real is None else real["kmax"]
    nmax = "-" if real is None else real["nmax"]
    lines.append(f"classes: {sorted({(c['k'], c['n']) for c in data['classes']}, key=str)}")
    lines.append(f"real (kmax, nmax): ({kmax}, {nmax})")
    lines.append(f"multiplicity: {data['multiplicity']}  r: {data['r']}")
    lines.append(f"triple (r; kmax, nmax): ({data['r']}; {kmax}, {nmax})")
    for err in data["errors"]:
        lines.append(f"error: {err}")
    return "\n".join(lines)


def cmd_analyze(args) -> int:
    sys_ = _load_system(_load_json(args.input), args.mode)
    config = _config(args)
    report = analyze(sys_, config)
    if args.json:
        print(report.dumps())
    else:
        print(_table(report))
    if any(u.ambiguous for u in report.units):
        return EXIT_AMBIGUOUS
    if report.errors:
        return EXIT_NUMERIC
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="flexpuiseux", description=__doc__.split("\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--trunc-order", type=int, default=8)
    common.add_argument("--tol", type=float, default=1e-10)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("expand", parents=[common], help="plane curve branches")
    p.add_argument("poly", help="polynomial text, or - for stdin")
    p.add_argument("--vars", help="comma-separated variable order (default x,y)")
    p.add_argument("--base", help="parameter variable (default: first)")
    p.set_defaults(func=cmd_expand)

    p = sub.add_parser("branches", parents=[common], help="space curve branches")
    p.add_argument("input", nargs="?", default="-", help="system JSON file, or - for stdin")
    p.add_argument("--base")
    p.add_argument("--mode", choices=["auto", "framework", "system"], default="auto")
    p.add_argument("--plot-csv", metavar="PATH")
    p.set_defaults(func=cmd_branches)

    p = sub.add_parser("analyze", parents=[common], help="flex analysis")
    p.add_argument("input", nargs="?", default="-", help="framework or system JSON, or - for stdin")
    p.add_argument("--mode", choices=["auto", "framework", "system"], default="auto")
    p.add_argument("--samples", type=int, default=8)
    p.add_argument("--seed", type=int, default=42)
    p.add_argument("--degree-bound", type=int, default=12)
    p.add_argument(
        "--lambda",
        dest="lam",
        action="append",
        metavar="[I:]L1,L2,...",
        help="explicit pencil values, optionally tied to removed index I (repeatable)",
    )
    p.add_argument("--remove", action="append", metavar="I[,J...]", help="only remove these constraints")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except AmbiguousLiftError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_AMBIGUOUS
    except (InputError, PolynomialSyntaxError, UnboundVariableError, FrameworkError,
            CurveNotThroughOriginError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except (ArithmeticError, YAxisComponentError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
