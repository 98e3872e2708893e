"""CSV/JSON writers and the matching readers."""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from decimal import ROUND_CEILING, ROUND_FLOOR, ROUND_HALF_EVEN, Decimal

from .density import DensityBracket
from .enumeration import CountReport
from .gaps import GapCatalog, GapInterval, GapMeasure
from .sequences import SSequence, parse_descriptor

GAP_FIELDS = ("s1", "s2", "left_lo", "left_hi", "right_lo", "right_hi", "length")
DENSITY_FIELDS = ("sequence", "point", "lo", "hi", "width", "prime_bound", "exponent_bound",
                  "prime_tail_bound", "exponent_tail_bound", "rounding_bound")
COUNT_FIELDS = ("sequence", "x", "count", "predicted", "deviation", "deviation_uncertainty",
                "envelope", "ratio", "density_lo", "density_hi")
MEASURE_FIELDS = ("bound", "gap_count", "total_length", "lower_conf", "upper_conf", "target")


def sig(x: float, digits: int = 12, rounding: str = ROUND_HALF_EVEN) -> str:
    """x to ``digits`` significant digits; ROUND_FLOOR/ROUND_CEILING for bracket ends."""
    d = Decimal(x)
    if not d:
        return "0"
    q = d.quantize(Decimal(1).scaleb(d.adjusted() - digits + 1), rounding=rounding)
    return format(q, "f") if -5 <= d.adjusted() < 15 else f"{q:.{digits - 1}e}"


def bracket_text(lo: float, hi: float, digits: int = 12) -> str:
    """Outward-rounded [lo, hi] so the printed bracket still contains the true one."""
    return f"[{sig(lo, digits, ROUND_FLOOR)}, {sig(hi, digits, ROUND_CEILING)}]"


def density_row(s: SSequence, b: DensityBracket) -> dict:
    t = b.tail_terms
    return {
        "sequence": str(s), "point": b.point, "lo": b.lo, "hi": b.hi, "width": b.width,
        "prime_bound": b.prime_bound, "exponent_bound": b.exponent_bound,
        "prime_tail_bound": t.prime_tail_bound, "exponent_tail_bound": t.exponent_tail_bound,
        "rounding_bound": t.rounding_bound,
    }


def gap_row(g: GapInterval) -> dict:
    return {
        "s1": str(g.s1), "s2": str(g.s2),
        "left_lo": g.left.lo, "left_hi": g.left.hi,
        "right_lo": g.right.lo, "right_hi": g.right.hi,
        "length": g.length,
    }


def measure_row(m: GapMeasure) -> dict:
    return {f: getattr(m, f) for f in MEASURE_FIELDS}


def to_csv(rows: list[dict], fields) -> str:
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(fields), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if row[k] is None else (repr(row[k]) if isinstance(row[k], float) else row[k])
                         for k in fields})
    return buf.getvalue()


def to_json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def catalog_json(catalog: GapCatalog) -> dict:
    return {
        "bound": catalog.bound,
        "disjointness": catalog.disjointness.status.value,
        "total_length": catalog.total_length,
        "gaps": [gap_row(g) for g in catalog.gaps],
    }


def count_json(report: CountReport) -> dict:
    return report.to_dict()


@dataclass(frozen=True)
class GapRecord:
    s1: SSequence
    s2: SSequence
    left_lo: float
    left_hi: float
    right_lo: float
    right_hi: float
    length: float


def _gap_record(row: dict) -> GapRecord:
    return GapRecord(
        parse_descriptor(row["s1"]), parse_descriptor(row["s2"]),
        *(float(row[f]) for f in GAP_FIELDS[2:]),
    )


def read_gaps_csv(text: str) -> list[GapRecord]:
    reader = csv.DictReader(io.StringIO(text))
    if tuple(reader.fieldnames or ()) != GAP_FIELDS:
        raise ValueError(f"unexpected gap CSV header {reader.fieldnames}")
    return [_gap_record(row) for row in reader]


def read_gaps_json(text: str) -> list[GapRecord]:
    return [_gap_record(row) for row in json.loads(text)["gaps"]]


def _num(value: str):
    if value == "":
        return None
    try:
        return int(value)
    except ValueError:
        return float(value)


def read_rows_csv(text: str) -> list[dict]:
    """Generic reader for the density, count and measure CSV exports."""
    return [
        {k: v if k in ("sequence", "s1", "s2") else _num(v) for k, v in row.items()}
        for row in csv.DictReader(io.StringIO(text))
    ]


def read_count_json(text: str) -> CountReport:
    return CountReport(**json.loads(text))
