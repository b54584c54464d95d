"""Command-line interface: ``ktconway {invariants,scan,verify,batch}``.

Exit codes: 0 success, 1 verification failure, 2 input error, 3 resource cap.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import re
import sys
from concurrent.futures import ProcessPoolExecutor

from .diagram import PDParseError, format_pd, parse_pd_line
from .families import FamilySpec, FamilySpecError, generate, parse_family_spec
from .invariants import ResourceLimitError
from .obstructions import CSV_COLUMNS, InvariantReport, Verdict, analyze, analyze_family
from .verify import SUITES, run_suite

EXIT_OK, EXIT_VERIFY, EXIT_INPUT, EXIT_RESOURCE = 0, 1, 2, 3
DEFAULT_GRID_CAP = 10_000
_RANGE = re.compile(r"^\s*(-?\d+)\s*(?:\.\.\s*(-?\d+))?\s*$")


class InputError(Exception):
    pass


def parse_range(text: str) -> range:
    """``a..b`` (inclusive) or a single integer."""
    m = _RANGE.match(text)
    if not m:
        raise argparse.ArgumentTypeError(f"expected a range like -5..5, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) is not None else lo
    if hi < lo:
        raise argparse.ArgumentTypeError(f"empty range {text!r}")
    return range(lo, hi + 1)


def _load_input(text: str):
    """Return ``(label, pd, source)`` for a family spec or a PD line."""
    if "PD[" in text:
        try:
            name, pd = parse_pd_line(text)
        except PDParseError as exc:
            raise InputError(str(exc)) from exc
        return name or "pd", pd, None
    try:
        spec = parse_family_spec(text)
    except FamilySpecError as exc:
        raise InputError(f"line 1, column 1: {exc}") from exc
    return spec.label(), generate(spec), spec


def _write_reports(reports: list[InvariantReport], fmt: str, out) -> None:
    if fmt == "json":
        json.dump([r.to_record() for r in reports], out, indent=2)
        out.write("\n")
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        writer.writeheader()
        for r in reports:
            writer.writerow(r.csv_row())
        out.write(buf.getvalue())


def _summary(reports: list[InvariantReport]) -> str:
    chir = sum(r.chirally is Verdict.OBSTRUCTED for r in reports)
    pure = sum(r.purely is Verdict.OBSTRUCTED for r in reports)
    n = len(reports)
    return (
        f"summary: {n} knots; chirally OBSTRUCTED {chir}, INCONCLUSIVE {n - chir}; "
        f"purely OBSTRUCTED {pure}, INCONCLUSIVE {n - pure}"
    )


# --- commands ---------------------------------------------------------------


def cmd_invariants(args) -> int:
    label, pd, source = _load_input(args.input)
    if args.emit_pd:
        print(format_pd(pd, label))
        return EXIT_OK
    try:
        report = analyze(pd, label, source)
    except ValueError as exc:
        raise InputError(str(exc)) from exc
    if args.format == "json":
        print(json.dumps(report.to_record(), indent=2))
    else:
        print(report.render_text())
    return EXIT_OK


def cmd_scan(args) -> int:
    kind = {"kt": "KT", "conway": "Conway"}[args.family]
    grid = [(r, n) for r in args.r for n in args.n]
    if len(grid) > args.max_grid and not args.force:
        print(f"error: grid of {len(grid)} points exceeds the cap of {args.max_grid} (use --force)", file=sys.stderr)
        return EXIT_RESOURCE
    specs = [FamilySpec(kind, rn) for rn in grid]
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(analyze_family, specs))
    else:
        reports = [analyze_family(s) for s in specs]
    _emit(reports, args)
    print(_summary(reports), file=sys.stderr)
    return EXIT_OK


def _emit(reports, args) -> None:
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="") as fh:
            _write_reports(reports, args.format, fh)
    else:
        _write_reports(reports, args.format, sys.stdout)


def cmd_verify(args) -> int:
    suites = SUITES if args.which == "all" else (args.which,)
    failed = total = 0
    for suite in suites:
        results = run_suite(suite, args.r, args.n, jobs=args.jobs)
        for res in results:
            if args.verbose or not res.passed:
                print(res.line())
        bad = sum(not r.passed for r in results)
        failed += bad
        total += len(results)
        status = "PASS" if bad == 0 else "FAIL"
        print(f"{status} {suite}: {len(results) - bad}/{len(results)}")
    return EXIT_OK if failed == 0 else EXIT_VERIFY


def cmd_batch(args) -> int:
    try:
        with open(args.path, encoding="utf-8") as fh:
            lines = fh.read().splitlines()
    except OSError as exc:
        print(f"error: cannot read {args.path}: {exc}", file=sys.stderr)
        return EXIT_INPUT
    reports = []
    for lineno, raw in enumerate(lines, start=1):
        text = raw.split("#", 1)[0].strip()
        if not text:
            continue
        try:
            name, pd = parse_pd_line(text, lineno)
            reports.append(analyze(pd, name or f"line{lineno}"))
        except (PDParseError, ValueError) as exc:
            msg = str(exc) if isinstance(exc, PDParseError) else f"line {lineno}: {exc}"
            if args.strict:
                print(f"error: {msg}", file=sys.stderr)
                return EXIT_INPUT
            print(f"warning: skipping {msg}", file=sys.stderr)
    _emit(reports, args)
    return EXIT_OK


# --- argument parsing ----------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ktconway", description="Knot invariants and cosmetic-surgery obstructions.")
    sub = p.add_subparsers(dest="command", required=True)

    inv = sub.add_parser("invariants", help="report all invariants of one knot")
    inv.add_argument("input", help="family spec (kt:r,n | conway:r,n | torus2:k | pretzel4:a,b,c,d) or a PD[...] line")
    inv.add_argument("--format", choices=("text", "json"), default="text")
    inv.add_argument("--emit-pd", action="store_true", help="print the PD code instead of the report")
    inv.set_defaults(func=cmd_invariants)

    sc = sub.add_parser("scan", help="analyze every (r, n) of a family grid")
    sc.add_argument("--family", choices=("kt", "conway"), required=True)
    sc.add_argument("--r", type=parse_range, required=True)
    sc.add_argument("--n", type=parse_range, required=True)
    sc.add_argument("--format", choices=("csv", "json"), default="csv")
    sc.add_argument("--output", help="write rows here instead of standard output")
    sc.add_argument("--max-grid", type=int, default=DEFAULT_GRID_CAP)
    sc.add_argument("--force", action="store_true", help="allow grids above --max-grid")
    sc.add_argument("--jobs", type=int, default=1)
    sc.set_defaults(func=cmd_scan)

    ve = sub.add_parser("verify", help="run a property suite over a grid")
    ve.add_argument("which", choices=SUITES + ("all",))
    ve.add_argument("--r", type=parse_range, default=parse_range("-5..5"))
    ve.add_argument("--n", type=parse_range, default=parse_range("-3..3"))
    ve.add_argument("--jobs", type=int, default=1)
    ve.add_argument("-v", "--verbose", action="store_true", help="print passing cases too")
    ve.set_defaults(func=cmd_verify)

    ba = sub.add_parser("batch", help="analyze a file of PD-code lines")
    ba.add_argument("path")
    ba.add_argument("--format", choices=("csv", "json"), default="csv")
    ba.add_argument("--output")
    ba.add_argument("--strict", action="store_true", help="fail on the first malformed line")
    ba.set_defaults(func=cmd_batch)
    return p


def _glue_negative_ranges(argv: list[str]) -> list[str]:
    # argparse would read "-5..5" as an option flag
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in ("--r", "--n") and i + 1 < len(argv) and argv[i + 1].startswith("-") and _RANGE.match(argv[i + 1]):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_ranges(argv))
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except ResourceLimitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
