"""``sweep`` command: run a parameter sweep and write CSV or JSON.

Either ``sweep --config file.json`` or the flag form::

    sweep --target LzsmRate --variable x --start 0 --stop 40 --points 400 \\
          --set eps=5.5 --set gamma=0.7958 --methods exact,airy --out rate.csv

Exit codes: 0 success, 2 usage error, 3 accuracy failure in some row,
4 every row hit a pole.
"""

from __future__ import annotations

import argparse
import json
import sys
from typing import List, Optional

from .sweep import (
    SCHEMA_VERSION,
    SweepSpec,
    UsageError,
    detect_extrema,
    exit_code,
    run_sweep,
    suppression_report,
    to_csv,
    to_json,
)

EXIT_OK, EXIT_USAGE, EXIT_ACCURACY, EXIT_POLE = 0, 2, 3, 4


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="sweep", description="Parameter sweeps of transition rates and fluorescence spectra.")
    p.add_argument("--config", help="JSON sweep specification (schema 1)")
    p.add_argument("--target")
    p.add_argument("--variable")
    p.add_argument("--start", type=float)
    p.add_argument("--stop", type=float)
    p.add_argument("--points", type=int)
    p.add_argument("--set", action="append", default=[], metavar="NAME=VALUE", help="fixed parameter")
    p.add_argument("--methods", help="comma-separated, e.g. exact,series")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.add_argument("--extrema", metavar="COLUMN", help="also report local extrema of COLUMN on stderr")
    p.add_argument(
        "--compare",
        metavar="CONFIG",
        help="second sweep config; report the oscillation-amplitude ratio (this/other) on stderr",
    )
    return p


def _parse_set(items: List[str]) -> dict:
    fixed = {}
    for item in items:
        if "=" not in item:
            raise UsageError(f"--set: expected NAME=VALUE, got {item!r}")
        k, v = item.split("=", 1)
        try:
            fixed[k.strip()] = float(v)
        except ValueError:
            raise UsageError(f"--set: {k.strip()!r} needs a number, got {v!r}") from None
    return fixed


def _load_config(path: str) -> SweepSpec:
    try:
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise UsageError(f"--config: cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise UsageError(f"--config: invalid JSON in {path}: {exc.msg}") from None
    return SweepSpec.from_dict(doc)


def spec_from_args(args) -> SweepSpec:
    if args.config:
        return _load_config(args.config)
    for name in ("target", "variable", "start", "stop", "points"):
        if getattr(args, name) is None:
            raise UsageError(f"--{name}: required without --config")
    methods = tuple(m.strip() for m in (args.methods or "exact").split(",") if m.strip())
    return SweepSpec.from_dict(
        {
            "schema": SCHEMA_VERSION,
            "target": args.target,
            "variable": args.variable,
            "start": args.start,
            "stop": args.stop,
            "points": args.points,
            "fixed": _parse_set(args.set),
            "methods": list(methods),
        }
    )


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        spec = spec_from_args(args)
        table = run_sweep(spec)
        text = to_csv(table) if args.format == "csv" else to_json(table)
        if args.out:
            with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
                fh.write(text)
        else:
            sys.stdout.write(text)
        if args.extrema:
            for e in detect_extrema(table, args.extrema):
                sys.stderr.write(f"{e.kind},{e.location:.17g},{e.value:.17g}\n")
        if args.compare:
            ratio = suppression_report(spec, _load_config(args.compare))
            sys.stderr.write(f"suppression_ratio,{ratio:.17g}\n")
    except UsageError as exc:
        sys.stderr.write(f"sweep: usage error: {exc}\n")
        return EXIT_USAGE
    code = exit_code(table)
    if code == EXIT_ACCURACY:
        sys.stderr.write("sweep: some rows failed to reach the requested accuracy\n")
    elif code == EXIT_POLE:
        sys.stderr.write("sweep: every grid point sits on a pole\n")
    return code


if __name__ == "__main__":
    sys.exit(main())
