"""Text rendering of result tables as CSV, JSON or markdown.

Numbers are rounded half-even at a fixed number of decimals, so output is
byte-identical across runs for the same inputs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal

from .alliance import AlliancePartition
from .pfn import PFN

OUTPUT_FORMATS = ("csv", "json", "markdown")


@dataclass
class Section:
    key: str
    title: str
    columns: list[str]
    rows: list[list[object]]
    # JSON form for sections that are not plain tables (partitions).
    payload: object = field(default=None)


def fmt_number(x: float, precision: int) -> str:
    q = Decimal(1).scaleb(-precision)
    d = Decimal(repr(float(x))).quantize(q, rounding=ROUND_HALF_EVEN)
    if d.is_zero():
        d = abs(d)
    return f"{d:f}"


def round_number(x: float, precision: int) -> float:
    return float(fmt_number(x, precision))


def fmt_cell(v: object, precision: int) -> str:
    if isinstance(v, PFN):
        return f"P({fmt_number(v.mu, precision)},{fmt_number(v.nu, precision)})"
    if isinstance(v, float):
        return fmt_number(v, precision)
    return str(v)


def _json_cell(v: object, precision: int) -> object:
    if isinstance(v, PFN):
        return {"mu": round_number(v.mu, precision), "nu": round_number(v.nu, precision)}
    if isinstance(v, float):
        return round_number(v, precision)
    return v


def partition_section(key: str, title: str, part: AlliancePartition) -> Section:
    rows = [
        ["positive", " ".join(part.positive)],
        ["central", " ".join(part.central)],
        ["negative", " ".join(part.negative)],
        ["unclassified", " ".join(part.unclassified)],
    ]
    return Section(key, title, ["region", "agents"], rows, payload=part.to_dict())


def render(sections: list[Section], fmt: str, precision: int = 4) -> str:
    if fmt == "json":
        return render_json(sections, precision)
    if fmt == "markdown":
        return render_markdown(sections, precision)
    if fmt == "csv":
        return render_csv(sections, precision)
    raise ValueError(f"unknown output format {fmt!r}")


def render_csv(sections: list[Section], precision: int) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    for i, sec in enumerate(sections):
        if i:
            buf.write("\n")
        buf.write(f"# {sec.title}\n")
        w.writerow(sec.columns)
        for row in sec.rows:
            w.writerow([fmt_cell(v, precision) for v in row])
    return buf.getvalue()


def render_markdown(sections: list[Section], precision: int) -> str:
    out = []
    for sec in sections:
        out.append(f"### {sec.title}\n")
        out.append("| " + " | ".join(sec.columns) + " |")
        out.append("|" + "|".join("---" for _ in sec.columns) + "|")
        for row in sec.rows:
            out.append("| " + " | ".join(fmt_cell(v, precision) or " " for v in row) + " |")
        out.append("")
    return "\n".join(out)


def render_json(sections: list[Section], precision: int) -> str:
    doc = {}
    for sec in sections:
        if sec.payload is not None:
            doc[sec.key] = sec.payload
        else:
            doc[sec.key] = [
                {col: _json_cell(v, precision) for col, v in zip(sec.columns, row)} for row in sec.rows
            ]
    return json.dumps(doc, indent=2) + "\n"
