"""Report rows and their deterministic renderings.

Every verification produces a flat list of rows (table, quantity, stated
value, derived value, status).  The same rows are rendered to Markdown, JSON
and CSV; rational values are carried as exact "p/q" strings so the three
formats agree character for character on every number.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Union

from .rationals import decimal_str, ratio_str

PASS = "PASS"
FAIL = "FAIL"
DISCREPANT = "DISCREPANT"

Value = Union[Fraction, int, str]


def render_value(v: Value) -> str:
    if isinstance(v, (Fraction, int)):
        return ratio_str(Fraction(v))
    return str(v)


@dataclass(frozen=True)
class Row:
    table: str
    quantity: str
    stated: str
    derived: str
    status: str
    kind: str = "derived"       # input | derived | consistency
    note: str = ""

    @classmethod
    def check(cls, table: str, quantity: str, stated: Value, derived: Value,
              kind: str = "derived", note: str = "",
              allow_discrepant: bool = False) -> "Row":
        s, d = render_value(stated), render_value(derived)
        if s == d:
            status = PASS
        elif allow_discrepant:
            status = DISCREPANT
        else:
            status = FAIL
        return cls(table, quantity, s, d, status, kind, note)


@dataclass
class Report:
    title: str
    rows: list[Row] = field(default_factory=list)

    def add(self, row: Row):
        self.rows.append(row)

    def extend(self, rows: Iterable[Row]):
        self.rows.extend(rows)

    def counts(self) -> dict[str, int]:
        out = {PASS: 0, FAIL: 0, DISCREPANT: 0}
        for r in self.rows:
            out[r.status] = out.get(r.status, 0) + 1
        return out

    def failed(self) -> list[Row]:
        return [r for r in self.rows if r.status == FAIL]

    def discrepant(self) -> list[Row]:
        return [r for r in self.rows if r.status == DISCREPANT]

    def ok(self) -> bool:
        """True when nothing failed beyond the declared discrepancies."""
        return not self.failed()

    # -- renderings ---------------------------------------------------------
    def to_markdown(self) -> str:
        lines = [f"# {self.title}", ""]
        counts = self.counts()
        lines.append(f"{counts[PASS]} PASS, {counts[DISCREPANT]} DISCREPANT, "
                     f"{counts[FAIL]} FAIL")
        lines.append("")
        current = None
        for r in self.rows:
            if r.table != current:
                if current is not None:
                    lines.append("")
                current = r.table
                lines.append(f"## {current}")
                lines.append("")
                lines.append("| quantity | stated | derived | status | note |")
                lines.append("|---|---|---|---|---|")
            note = r.note if r.kind != "input" else (r.note or "input")
            lines.append(f"| {r.quantity} | {r.stated} | {r.derived} "
                         f"| {r.status} | {note} |")
        lines.append("")
        return "\n".join(lines)

    def to_json_doc(self) -> dict:
        counts = self.counts()
        return {
            "title": self.title,
            "summary": {"pass": counts[PASS], "fail": counts[FAIL],
                        "discrepant": counts[DISCREPANT]},
            "rows": [
                {"table": r.table, "quantity": r.quantity, "stated": r.stated,
                 "derived": r.derived, "status": r.status, "kind": r.kind,
                 "note": r.note}
                for r in self.rows
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_json_doc(), sort_keys=True, indent=2,
                          ensure_ascii=False) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["table", "quantity", "stated", "derived", "status",
                    "kind", "note"])
        for r in self.rows:
            w.writerow([r.table, r.quantity, r.stated, r.derived, r.status,
                        r.kind, r.note])
        return buf.getvalue()

    def render(self, fmt: str) -> str:
        if fmt == "markdown":
            return self.to_markdown()
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        raise ValueError(f"unknown format {fmt!r}")


def bracket_str(lo: Fraction, hi: Fraction, digits: int = 12) -> str:
    return (f"[{ratio_str(lo)}, {ratio_str(hi)}] = "
            f"[{decimal_str(lo, digits)}, {decimal_str(hi, digits)}]")
