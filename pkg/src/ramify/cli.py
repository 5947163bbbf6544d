"""Command-line front end: enumerate invariants, analyze polynomials, selftest.

Exit codes: 0 success, 1 selftest mismatch, 2 configuration error,
3 malformed or non-Eisenstein polynomial input.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys

from . import serialize
from .analyzer import (
    NotEisensteinError,
    fine_of,
    parse_integer_polynomial,
    polygon_of,
    unif_of,
)
from .binomials import BinomialContext
from .enumeration import Level, enumerate_invariants
from .residue_field import make_field
from .selftest import run_selftest
from .templates import (
    cardinality,
    expand_template,
    reduce_template,
    template_for_fine,
    template_for_invariant,
    truncate_krasner,
)


class ConfigError(ValueError):
    pass


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ramify",
        description="Invariants and polynomial templates of totally ramified "
        "p-adic field extensions",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_field_options(p: argparse.ArgumentParser) -> None:
        p.add_argument("--p", type=int, required=True, help="residue characteristic")
        p.add_argument("--f", type=int, default=1, help="residue degree of K")
        p.add_argument("--e", type=int, default=1, help="absolute ramification index of K")
        p.add_argument("--gamma", default="1", help="uniformizer residue of pi w.r.t. p")

    enum = sub.add_parser("enumerate", help="enumerate invariants of a given degree")
    add_field_options(enum)
    enum.add_argument("--degree", type=int, required=True)
    enum.add_argument("--level", choices=["ram", "fine", "res", "unif"], required=True)
    enum.add_argument("--format", choices=["json", "csv"], default="json")
    enum.add_argument("--stats", action="store_true", help="report branch counters")
    enum.add_argument("--truncate", action="store_true", help="apply the Krasner cutoff")
    enum.add_argument("--reduce", action="store_true", help="apply uniformizer-change reduction")
    enum.add_argument("--expand", action="store_true", help="list template polynomials")

    analyze = sub.add_parser("analyze", help="invariants of one Eisenstein polynomial")
    add_field_options(analyze)
    analyze.add_argument("polynomial", nargs="?", help='integer form, e.g. "x^2-2"')
    analyze.add_argument("--json", dest="json_file", help="digit-table JSON file, - for stdin")

    self_p = sub.add_parser("selftest", help="run the survey-vs-enumerator cross-checks")
    self_p.add_argument(
        "--case",
        action="append",
        default=None,
        metavar="p:n:depth",
        help="override the built-in desk-scale cases",
    )
    return parser


def _make_context(args) -> BinomialContext:
    try:
        base = make_field(args.p, args.f, args.e, args.gamma)
    except ValueError as exc:
        raise ConfigError(str(exc)) from exc
    return BinomialContext(base)


def _workers() -> int | None:
    raw = os.environ.get("RAMIFY_THREADS")
    if not raw:
        return None
    try:
        return max(1, int(raw))
    except ValueError:
        raise ConfigError(f"RAMIFY_THREADS must be an integer, got {raw!r}")


def cmd_enumerate(args, out) -> int:
    if args.expand and args.level not in ("fine", "unif"):
        raise ConfigError("--expand requires --level fine or unif")
    if args.reduce and args.level != "unif":
        raise ConfigError("--reduce requires --level unif")
    if args.expand and not args.truncate:
        raise ConfigError("--expand requires --truncate (templates must be finite)")
    if args.expand and args.format == "csv":
        raise ConfigError("--expand output is JSON only")
    if args.degree < 1:
        raise ConfigError("--degree must be positive")
    ctx = _make_context(args)
    results, stats = enumerate_invariants(ctx, args.degree, Level(args.level), workers=_workers())

    if args.format == "csv":
        writer = csv.writer(out)
        writer.writerow(serialize.CSV_COLUMNS[args.level])
        for index, obj in enumerate(results):
            writer.writerow(serialize.invariant_to_csv_row(args.level, index, obj))
        if args.stats:
            print(
                f"branches_visited={stats.branches_visited} results={stats.results}",
                file=sys.stderr,
            )
        return 0

    records = []
    for obj in results:
        record = serialize.invariant_to_json(obj)
        if args.expand:
            record = {"invariant": record}
            if args.level == "fine":
                template = template_for_fine(ctx, obj)
                J0 = obj.J0
            else:
                template = template_for_invariant(ctx, obj)
                J0 = obj.res.polygon.J0
            if args.truncate:
                template = truncate_krasner(template, J0)
            if args.reduce:
                template = reduce_template(ctx, template, obj)
            record["template"] = serialize.template_to_json(template)
            record["cardinality"] = cardinality(template)
            record["polynomials"] = [
                serialize.polynomial_to_json(f) for f in expand_template(template)
            ]
        records.append(record)
    doc = {
        "schema": serialize.SCHEMA_VERSION,
        "field": serialize.field_to_json(ctx.base),
        "degree": args.degree,
        "level": args.level,
        "count": len(results),
        "results": records,
    }
    if args.stats:
        doc["stats"] = {
            "branches_visited": stats.branches_visited,
            "results": stats.results,
        }
    json.dump(doc, out, indent=2, sort_keys=True)
    out.write("\n")
    return 0


def cmd_analyze(args, out) -> int:
    ctx = _make_context(args)
    if (args.polynomial is None) == (args.json_file is None):
        raise ConfigError("provide exactly one of a polynomial string or --json")
    if args.polynomial is not None:
        if ctx.base.e != 1 or ctx.base.f != 1:
            raise ConfigError("integer polynomial input requires e = f = 1")
        f = parse_integer_polynomial(ctx.base, args.polynomial)
    else:
        text = (
            sys.stdin.read()
            if args.json_file == "-"
            else open(args.json_file, encoding="utf-8").read()
        )
        f = serialize.polynomial_from_json(ctx.base, json.loads(text))
    invariant = unif_of(f)
    doc = {
        "schema": serialize.SCHEMA_VERSION,
        "field": serialize.field_to_json(ctx.base),
        "polynomial": serialize.polynomial_to_json(f),
        "polygon": serialize.ram_to_json(polygon_of(f)),
        "fine": serialize.fine_to_json(fine_of(f)),
        "residues": serialize.res_to_json(invariant.res),
        "phi0": str(invariant.phi0),
    }
    json.dump(doc, out, indent=2, sort_keys=True)
    out.write("\n")
    return 0


def cmd_selftest(args, out) -> int:
    from .analyzer import SURVEY_GUARD
    from .selftest import DEFAULT_CASES

    cases = DEFAULT_CASES
    if args.case:
        parsed = []
        for text in args.case:
            try:
                p, n, depth = (int(part) for part in text.split(":"))
            except ValueError:
                raise ConfigError(f"bad case {text!r}, expected p:n:depth")
            if not 1 <= n or depth < 1:
                raise ConfigError(f"bad case {text!r}")
            if p**(n * depth) > SURVEY_GUARD:
                raise ConfigError(f"case {text!r} exceeds the survey guard")
            parsed.append((p, n, depth))
        cases = tuple(parsed)
    ok = run_selftest(cases, report=lambda line: print(line, file=out))
    return 0 if ok else 1


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "enumerate":
            return cmd_enumerate(args, sys.stdout)
        if args.command == "analyze":
            return cmd_analyze(args, sys.stdout)
        return cmd_selftest(args, sys.stdout)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except NotEisensteinError as exc:
        print(f"error: not an Eisenstein polynomial: {exc}", file=sys.stderr)
        return 3
    except (OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
