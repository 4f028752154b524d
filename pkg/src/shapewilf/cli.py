"""Command line entry point: ``shapewilf <command> ...``.

Exit status is 0 on success, 1 when a verification fails and 2 for invalid
input or usage.
"""
from __future__ import annotations

import argparse
import csv
import sys
from pathlib import Path

from .bijection import Phi, Psi
from .core import ClassicalPattern, format_shape, parse_shape, parse_transversal, pop_parse, split_pop_list
from .enumeration import census, shapes_with_transversals, transversals, write_census_csv
from .errors import InvalidInput, ShapeWilfError
from .patterns import count_avoiders, count_avoiders_patterns
from .render import parse_ascii, render_ascii, render_svg
from .verify import REPORT_HEADER, describe, verify_all

EXIT_OK = 0
EXIT_VERIFY_FAILED = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _positive(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"{value} must be at least 1")
    return value


def _k_value(text):
    value = _positive(text)
    if value < 3:
        raise argparse.ArgumentTypeError("k must be at least 3")
    return value


def _k_list(text):
    return [_k_value(part) for part in text.split(",") if part.strip()]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="shapewilf",
        description="Pattern-avoiding transversals of Young diagrams and the P_k/Q_k bijection.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("shapes", help="list shapes with n rows that admit transversals")
    p.add_argument("--rows", type=_positive, required=True)

    p = sub.add_parser("enumerate", help="list all transversals of a shape")
    p.add_argument("--shape", required=True, help="row lengths, e.g. 3,3,2")

    p = sub.add_parser("count", help="count transversals avoiding a POP or a pattern set")
    p.add_argument("--shape", required=True)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--pop", help='POP spec, e.g. "k=3;lt=2<1,2<3" or P3')
    group.add_argument("--patterns", help="comma-separated classical patterns, e.g. 213,312")

    p = sub.add_parser("census", help="write avoider counts for every shape to CSV")
    p.add_argument("--max-rows", type=_positive, required=True)
    p.add_argument("--pop", action="append", required=True,
                   help="POP spec or list of specs; may be repeated")
    p.add_argument("--out", required=True, help="output CSV path, - for stdout")
    p.add_argument("--jobs", type=_positive, default=1)

    p = sub.add_parser("apply", help="apply Phi or Psi to transversals read from a file")
    p.add_argument("--map", choices=("phi", "psi"), required=True)
    p.add_argument("--k", type=_k_value, required=True)
    p.add_argument("--input", required=True, help="file with one transversal per line")
    p.add_argument("--trace", help="write the step records (single input only) as JSON")

    p = sub.add_parser("verify", help="exhaustively check the bijection and its lemmas")
    p.add_argument("--max-rows", type=_positive, required=True)
    p.add_argument("--min-rows", type=_positive, default=1)
    p.add_argument("--k", type=_k_list, required=True, help="k or comma-separated list of k")
    p.add_argument("--jobs", type=_positive, default=1)
    p.add_argument("--no-lemmas", action="store_true", help="skip the per-step lemma checks")
    p.add_argument("--report-dir", help="write report.csv and one JSON file per failing shape")

    p = sub.add_parser("render", help="draw a transversal")
    p.add_argument("--input", required=True)
    p.add_argument("--format", choices=("ascii", "svg"), default="ascii")
    return parser


def _read_lines(path) -> list[str]:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return [line.strip() for line in text.splitlines() if line.strip() and not line.lstrip().startswith("#")]


def _read_transversal(path):
    text = "\n".join(_read_lines(path))
    if text.startswith("shape="):
        return parse_transversal(text)
    return parse_ascii(text)


def cmd_shapes(args, out):
    for shape in shapes_with_transversals(args.rows):
        print(format_shape(shape), file=out)


def cmd_enumerate(args, out):
    for T in transversals(parse_shape(args.shape)):
        print(T.to_text(), file=out)


def cmd_count(args, out):
    shape = parse_shape(args.shape)
    if args.pop is not None:
        print(count_avoiders(shape, pop_parse(args.pop)), file=out)
    else:
        patterns = [ClassicalPattern.parse(s) for s in args.patterns.split(",") if s.strip()]
        if not patterns:
            raise UsageError("--patterns needs at least one pattern")
        shape.require_transversals()
        print(count_avoiders_patterns(shape, patterns), file=out)


def cmd_census(args, out):
    pops = [pop_parse(spec) for item in args.pop for spec in split_pop_list(item)]
    if not pops:
        raise UsageError("--pop needs at least one POP")
    rows = census(args.max_rows, pops, jobs=args.jobs)
    if args.out == "-":
        write_census_csv(rows, out)
        return
    # write everything before creating the file, so errors leave no partial output
    rows = list(rows)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_census_csv(rows, fh)


def cmd_apply(args, out):
    lines = _read_lines(args.input)
    if not lines:
        raise UsageError(f"{args.input} holds no transversal")
    if args.trace and len(lines) != 1:
        raise UsageError("--trace needs an input file with exactly one transversal")
    run = Phi if args.map == "phi" else Psi
    results = []
    for line in lines:
        T = parse_transversal(line)
        results.append(run(T, args.k))
    for U, _ in results:
        print(U.to_text(), file=out)
    if args.trace:
        Path(args.trace).write_text(results[0][1].to_json() + "\n", encoding="utf-8")


def cmd_verify(args, out):
    failures = 0
    total = 0
    report_rows = []
    report_dir = Path(args.report_dir) if args.report_dir else None
    if report_dir is not None:
        report_dir.mkdir(parents=True, exist_ok=True)
    if args.min_rows > args.max_rows:
        raise UsageError("--min-rows exceeds --max-rows")
    for rep in verify_all(args.max_rows, args.k, jobs=args.jobs, lemmas=not args.no_lemmas,
                          min_rows=args.min_rows):
        total += 1
        report_rows.append(rep.csv_fields())
        if not rep.ok:
            failures += 1
            print(describe(rep), file=out)
            if report_dir is not None:
                name = f"failure_{'-'.join(map(str, rep.shape))}_k{rep.k}.json"
                (report_dir / name).write_text(rep.failure_json() + "\n", encoding="utf-8")
    if report_dir is not None:
        with open(report_dir / "report.csv", "w", encoding="utf-8", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(REPORT_HEADER)
            writer.writerows(report_rows)
    print(f"verified {total} (shape, k) pairs: {failures} failed", file=out)
    return EXIT_VERIFY_FAILED if failures else EXIT_OK


def cmd_render(args, out):
    T = _read_transversal(args.input)
    out.write(render_ascii(T) if args.format == "ascii" else render_svg(T))


COMMANDS = {
    "shapes": cmd_shapes,
    "enumerate": cmd_enumerate,
    "count": cmd_count,
    "census": cmd_census,
    "apply": cmd_apply,
    "verify": cmd_verify,
    "render": cmd_render,
}


def run(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        return COMMANDS[args.command](args, out) or EXIT_OK
    except (UsageError, InvalidInput) as exc:
        print(f"shapewilf {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ShapeWilfError as exc:
        print(f"shapewilf {args.command}: internal failure: {exc}", file=sys.stderr)
        return EXIT_VERIFY_FAILED


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
