"""Command-line interface: ``esnd density|count|enumerate|gaps|measure|verify``."""

from __future__ import annotations

import argparse
import sys
from dataclasses import dataclass
from decimal import Decimal, InvalidOperation
from pathlib import Path

from . import export
from .density import DEFAULT_EXPONENT_BOUND, DEFAULT_PRIME_BOUND, DEFAULT_WIDTH, density
from .enumeration import enumerate_members, sieve_count
from .gaps import MAX_BOUND, MIN_BOUND, Disjointness, gap_catalog, gap_measure
from .sequences import DescriptorError, parse_descriptor
from .verify import SUITES

EXIT_OK, EXIT_COMPUTATION, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def positive_int(text: str) -> int:
    """Integer flag value; accepts scientific notation such as 1e7."""
    try:
        value = Decimal(text)
    except InvalidOperation:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if value != value.to_integral_value() or value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text!r}")
    return int(value)


def positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not value > 0:
        raise argparse.ArgumentTypeError(f"expected a positive number, got {text!r}")
    return value


@dataclass
class Rendered:
    text: str
    status: int = EXIT_OK


def _render(args, rows: list[dict], fields, text: str, json_obj=None) -> str:
    if args.format == "csv":
        return export.to_csv(rows, fields)
    if args.format == "json":
        return export.to_json(rows if json_obj is None else json_obj)
    return text


def _sequences(args):
    try:
        return [parse_descriptor(t) for t in args.seq]
    except DescriptorError as exc:
        raise UsageError(str(exc)) from None


def cmd_density(args) -> Rendered:
    rows, lines = [], []
    for s in _sequences(args):
        b = density(s, args.prime_bound, args.exp_bound, width=args.width)
        rows.append(export.density_row(s, b))
        lines.append(
            f"{s}  h = {export.sig(b.point)}  {export.bracket_text(b.lo, b.hi)}  "
            f"width {export.sig(b.width, 3)}  P={b.prime_bound} I={b.exponent_bound}"
        )
        if not b.meets_target:
            print(f"warning: {s}: width {b.width:.3e} above requested {args.width:.3e}", file=sys.stderr)
    return Rendered(_render(args, rows, export.DENSITY_FIELDS, "\n".join(lines) + "\n"))


def cmd_count(args) -> Rendered:
    rows, lines = [], []
    for s in _sequences(args):
        r = sieve_count(s, args.limit)
        rows.append(r.to_dict())
        ratio = "n/a" if r.ratio is None else export.sig(r.ratio, 6)
        lines.append(
            f"{s}  x={r.x}  count={r.count}  predicted={export.sig(r.predicted)}  "
            f"deviation={export.sig(r.deviation, 6)} (+/- {export.sig(r.deviation_uncertainty, 3)})  "
            f"envelope ratio={ratio}"
        )
    json_obj = rows[0] if len(rows) == 1 else rows
    return Rendered(_render(args, rows, export.COUNT_FIELDS, "\n".join(lines) + "\n", json_obj))


def cmd_enumerate(args) -> Rendered:
    (s,) = _sequences(args)
    members = enumerate_members(s, args.limit)
    rows = [{"n": n} for n in members]
    json_obj = {"sequence": str(s), "x": args.limit, "members": members}
    return Rendered(_render(args, rows, ("n",), "\n".join(map(str, members)) + "\n", json_obj))


def _check_max_term(args) -> None:
    if not MIN_BOUND <= args.max_term <= MAX_BOUND:
        raise UsageError(f"--max-term must be in [{MIN_BOUND}, {MAX_BOUND}]")


def cmd_gaps(args) -> Rendered:
    _check_max_term(args)
    catalog = gap_catalog(args.max_term, args.width)
    rows = [export.gap_row(g) for g in catalog.gaps]
    lines = [f"{len(catalog)} gaps with terms <= {args.max_term}; "
             f"{catalog.disjointness.status.value}; total length {export.sig(catalog.total_length)}"]
    for g in catalog.gaps:
        lines.append(
            f"({export.sig(g.left.point)}, {export.sig(g.right.point)})  length {export.sig(g.length)}  "
            f"S1={g.s1}  S2={g.s2}"
        )
    status = EXIT_OK if catalog.disjointness.status is Disjointness.DISJOINT else EXIT_COMPUTATION
    if status:
        print(f"error: {catalog.disjointness.message}", file=sys.stderr)
    text = "\n".join(lines) + "\n"
    return Rendered(_render(args, rows, export.GAP_FIELDS, text, export.catalog_json(catalog)), status)


def cmd_measure(args) -> Rendered:
    _check_max_term(args)
    measures = [gap_measure(b, args.width) for b in range(2, args.max_term + 1)]
    rows = [export.measure_row(m) for m in measures]
    lines = [f"target 1 - 6/pi^2 = {export.sig(measures[0].target)}"]
    for m in measures:
        lines.append(
            f"B={m.bound:2d}  gaps={m.gap_count:5d}  total={export.sig(m.total_length)}  "
            f"{export.bracket_text(m.lower_conf, m.upper_conf)}  "
            f"({100 * m.fraction_of_target:.2f}% of target)"
        )
    lines.append(f"conjecture: OPEN. {measures[0].note}")
    json_obj = {"conjecture": "open", "note": measures[0].note, "measures": rows}
    return Rendered(_render(args, rows, export.MEASURE_FIELDS, "\n".join(lines) + "\n", json_obj))


def cmd_verify(args) -> Rendered:
    names = list(SUITES) if args.suite == "all" else [args.suite]
    results = [SUITES[name]() for name in names]
    lines = [r.summary() for r in results]
    status = EXIT_OK if all(r.passed for r in results) else EXIT_COMPUTATION
    rows = [{"suite": r.name, "passed": r.passed, "checked": r.checked,
             "counterexample": r.counterexample} for r in results]
    return Rendered(_render(args, rows, ("suite", "passed", "checked", "counterexample"),
                            "\n".join(lines) + "\n"), status)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="esnd", description="Densities of exponentially S-numbers and the gaps between them."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seq=False, multi=False):
        if seq:
            p.add_argument("--seq", required=True, action="append" if multi else "store",
                           help="sequence descriptor: finite:1,2 | cofinite:1;tail=3 | named:odd")
        p.add_argument("--format", choices=("text", "json", "csv"), default="text")
        p.add_argument("--out", type=Path, help="write output here instead of stdout")

    p = sub.add_parser("density", help="certified bracket for h(E(S))")
    common(p, seq=True, multi=True)
    p.add_argument("-P", "--prime-bound", type=positive_int, default=DEFAULT_PRIME_BOUND)
    p.add_argument("-I", "--exp-bound", type=positive_int, default=DEFAULT_EXPONENT_BOUND)
    p.add_argument("--width", type=positive_float, default=DEFAULT_WIDTH,
                   help="target bracket width; the prime bound is raised until it is met")
    p.set_defaults(func=cmd_density)

    p = sub.add_parser("count", help="sieve count of E(S) up to x against h*x")
    common(p, seq=True, multi=True)
    p.add_argument("--limit", type=positive_int, required=True)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("enumerate", help="list E(S) up to x")
    common(p, seq=True)
    p.add_argument("--limit", type=positive_int, required=True)
    p.set_defaults(func=cmd_enumerate)

    for name, func, helptext in (
        ("gaps", cmd_gaps, "gap catalog for all S1 with terms <= B"),
        ("measure", cmd_measure, "total gap length for B = 2..max-term"),
    ):
        p = sub.add_parser(name, help=helptext)
        common(p)
        p.add_argument("--max-term", type=positive_int, required=True)
        p.add_argument("--width", type=positive_float, default=1e-9)
        p.set_defaults(func=func)

    p = sub.add_parser("verify", help="run a verification suite")
    p.add_argument("suite", choices=(*SUITES, "all"))
    common(p)
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: list[str] | None = None) -> tuple[int, str]:
    parser = build_parser()
    args = parser.parse_args(argv)
    if getattr(args, "seq", None) and not isinstance(args.seq, list):
        args.seq = [args.seq]
    for field in ("prime_bound", "exp_bound"):
        if getattr(args, field, 2) < 2:
            parser.error(f"--{field.replace('_', '-')} must be >= 2")
    try:
        rendered = args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except (ValueError, ArithmeticError) as exc:
        return EXIT_COMPUTATION, f"error: {exc}\n"
    if args.out is not None:
        args.out.write_text(rendered.text)
        return rendered.status, ""
    return rendered.status, rendered.text


def main(argv: list[str] | None = None) -> int:
    status, text = run(argv)
    if status == EXIT_COMPUTATION and text.startswith("error:"):
        sys.stderr.write(text)
    else:
        sys.stdout.write(text)
    return status


if __name__ == "__main__":
    sys.exit(main())
