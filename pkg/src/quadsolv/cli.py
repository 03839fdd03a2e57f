"""Command-line front end: ``analyze``, ``sweep`` and ``fixtures``."""

import argparse
import dataclasses
import json
import logging
import sys

from . import __version__
from .classifier import classify
from .errors import QuadsolvError
from .expr import evaluate
from .fixtures import FIXTURES, fixture_text
from .numeric import DEFAULT_TOL
from .report import report_json, report_text
from .sweep import Indicator, SweepSpec, run_sweep, sweep_dict
from .system import ingest

EXIT_OK = 0
EXIT_ERROR = 2


def _assignment(text):
    name, sep, value = text.partition("=")
    name = name.strip()
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    try:
        return name, evaluate(value)
    except QuadsolvError as exc:
        raise argparse.ArgumentTypeError(f"bad value for {name}: {exc}") from None


def _positive(text):
    x = float(text)
    if not x > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return x


def build_parser():
    parser = argparse.ArgumentParser(
        prog="quadsolv",
        description="Solvability by quadratures of linear systems with small exponents.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    tolerances = argparse.ArgumentParser(add_help=False)
    tolerances.add_argument("--tol", type=_positive, help="equality tolerance (eq_tol)")
    tolerances.add_argument("--rank-tol", type=_positive, help="rank tolerance (rank_tol)")

    a = sub.add_parser("analyze", parents=[tolerances], help="classify one system")
    a.add_argument("file", help="system document (JSON), '-' for stdin")
    a.add_argument("-p", dest="bindings", action="append", type=_assignment, default=[],
                   metavar="NAME=VALUE", help="bind a declared parameter")
    a.add_argument("--json", action="store_true", help="print the machine report")

    s = sub.add_parser("sweep", parents=[tolerances], help="scan one parameter for the solvability locus")
    s.add_argument("file", help="system document (JSON), '-' for stdin")
    s.add_argument("--param", required=True, help="parameter to sweep")
    s.add_argument("--from", dest="start", type=float, required=True)
    s.add_argument("--to", dest="stop", type=float, required=True)
    s.add_argument("--steps", type=int, required=True)
    s.add_argument("--fix", dest="fixed", action="append", type=_assignment, default=[],
                   metavar="NAME=VALUE", help="bind another parameter")
    s.add_argument("--indicator", choices=[i.value for i in Indicator], default="cartan")
    s.add_argument("--json", action="store_true", help="print the sweep as JSON")

    f = sub.add_parser("fixtures", help="print a built-in example document")
    f.add_argument("name", help="one of: " + ", ".join(sorted(FIXTURES)))
    return parser


def _policy(args):
    changes = {}
    if args.tol is not None:
        changes["eq_tol"] = args.tol
    if args.rank_tol is not None:
        changes["rank_tol"] = args.rank_tol
    return dataclasses.replace(DEFAULT_TOL, **changes)


def _read(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def cmd_analyze(args, out):
    tol = _policy(args)
    sysm = ingest(_read(args.file), dict(args.bindings), tol)
    report = classify(sysm, tol)
    out.write(report_json(report) if args.json else report_text(report))
    return report


def cmd_sweep(args, out):
    tol = _policy(args)
    spec = SweepSpec(
        parameter=args.param,
        start=args.start,
        stop=args.stop,
        steps=args.steps,
        fixed_bindings=dict(args.fixed),
        indicator=Indicator(args.indicator),
    )
    result = run_sweep(json.loads(_read(args.file)), spec, tol)
    if args.json:
        out.write(json.dumps(sweep_dict(spec, result), indent=2) + "\n")
        return result
    out.write(f"Sweep of {spec.parameter} over [{spec.start:g}, {spec.stop:g}], "
              f"{spec.steps} samples, indicator {spec.indicator.name}\n")
    for x, v in result.samples:
        shown = ("yes" if v else "no") if isinstance(v, bool) else f"{v:.3e}"
        out.write(f"  {x:14.8g}  {shown}\n")
    for x, msg in result.failures:
        out.write(f"  {x:14.8g}  failed: {msg}\n")
    for a, b in result.zero_runs:
        out.write(f"Indicator vanishes on [{a:g}, {b:g}]\n")
    if result.roots:
        out.write("Roots: " + ", ".join(f"{r:.10g}" for r in result.roots) + "\n")
    else:
        out.write("Roots: none\n")
    return result


def main(argv=None, out=None, err=None):
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code
    logging.basicConfig(level=logging.INFO if args.verbose else logging.ERROR,
                        format="%(levelname)s %(name)s: %(message)s", stream=err)
    try:
        if args.command == "analyze":
            cmd_analyze(args, out)
        elif args.command == "sweep":
            cmd_sweep(args, out)
        else:
            out.write(fixture_text(args.name))
    except QuadsolvError as exc:
        err.write(f"error: {type(exc).__name__}: {exc}\n")
        return EXIT_ERROR
    except (OSError, ValueError) as exc:
        err.write(f"error: {exc}\n")
        return EXIT_ERROR
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
