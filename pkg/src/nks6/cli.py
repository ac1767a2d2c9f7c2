"""Command-line driver: ``nks6 --suite <name> [--catalog <id>] ...``.

Exit status is 0 when every check passes, 1 when any check fails and 2 on a
usage or configuration error.
"""

from __future__ import annotations

import argparse
import re
import sys

from . import __version__
from .constructions import catalog
from .report import FORMATS, OUT_ENV, emit_report, render, to_text
from .suites import SUITES, ConfigError, RunConfig, run_suite


def parse_grid(text):
    if not re.fullmatch(r"\d+x\d+(x\d+)?", text):
        raise argparse.ArgumentTypeError(f"grid must look like NxN or NxNxN, got {text!r}")
    return tuple(int(n) for n in text.split("x"))


def parse_tol(text):
    name, sep, value = text.partition("=")
    if not sep or not name:
        raise argparse.ArgumentTypeError(f"tolerance must look like name=value, got {text!r}")
    try:
        tol = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"tolerance value {value!r} is not a number") from None
    if not tol > 0:
        raise argparse.ArgumentTypeError(f"tolerance {name} must be positive")
    return name, tol


def parse_seed(text):
    seed = int(text)
    if not 0 <= seed < 2**64:
        raise argparse.ArgumentTypeError("seed must be an unsigned 64-bit integer")
    return seed


def build_parser():
    p = argparse.ArgumentParser(
        prog="nks6",
        description="Verify the nearly Kähler S^6 toolkit on catalog examples.",
    )
    p.add_argument("--suite", choices=SUITES, help="verification suite to run")
    p.add_argument("--catalog", metavar="ID",
                   help="catalog example (default: every applicable entry)")
    p.add_argument("--grid", type=parse_grid, default=(5, 5, 5), metavar="NxN[xN]",
                   help="chart grid resolution per axis (default 5x5x5)")
    p.add_argument("--seed", type=parse_seed, default=0, help="seed for all random sampling")
    p.add_argument("--tol", type=parse_tol, action="append", default=[], metavar="NAME=VALUE",
                   help="override a check tolerance (repeatable)")
    p.add_argument("--samples", type=int, default=None,
                   help="random sample count (pairs, points or warped products)")
    p.add_argument("--out", metavar="DIR",
                   help=f"output directory (default ${OUT_ENV}; stdout when neither is set)")
    p.add_argument("--format", choices=FORMATS, default="json", dest="fmt")
    p.add_argument("--list-catalog", action="store_true", help="list catalog ids and exit")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    return p


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.list_catalog:
        for key, entry in catalog().items():
            print(f"{key:18s} {entry.kind:10s} {entry.description}")
        return 0
    if args.suite is None:
        parser.error("--suite is required")
    try:
        config = RunConfig(catalog=args.catalog, grid=args.grid, seed=args.seed,
                           tolerances=dict(args.tol), samples=args.samples,
                           out=args.out, fmt=args.fmt)
        report = run_suite(config, args.suite)
    except ConfigError as exc:
        print(f"nks6: error: {exc}", file=sys.stderr)
        return 2
    path = emit_report(report, args.fmt, args.out)
    if path is None:
        sys.stdout.write(render(report, args.fmt))
    else:
        sys.stdout.write(to_text(report))
        print(f"report written to {path}")
    return 0 if report.passed else 1


if __name__ == "__main__":
    sys.exit(main())
