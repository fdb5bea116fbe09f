"""Structured output documents with exact decimal payloads.

Every number leaving the library is a decimal string (integers) or a
"p/q" string with an optional decimal rendering at a requested number of
significant digits; binary floats never appear.  CSV and plain renderings
carry only the data rows, so identical requests produce identical bytes;
the JSON rendering adds metadata including a timestamp.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from datetime import datetime, timezone
from decimal import Decimal, localcontext
from fractions import Fraction

__all__ = ["OutputDocument", "decimal_string", "fraction_cell", "render"]

FORMATS = ("csv", "json", "plain")


def decimal_string(value: Fraction, digits: int = 6) -> str:
    """Render an exact rational to the given significant digits, base 10."""
    if digits < 1:
        raise ValueError(f"need at least one significant digit, got {digits}")
    with localcontext() as ctx:
        ctx.prec = digits
        quotient = Decimal(value.numerator) / Decimal(value.denominator)
    return format(quotient, "f")


def fraction_cell(value: Fraction, digits: int = 6) -> dict[str, str]:
    """Exact "p/q" form alongside its decimal rendering."""
    return {
        "exact": f"{value.numerator}/{value.denominator}",
        "decimal": decimal_string(value, digits),
    }


@dataclass
class OutputDocument:
    """A renderable result: tabular rows plus optional structured extras."""

    kind: str
    columns: list[str]
    rows: list[list[str]]
    extra: dict = field(default_factory=dict)
    metadata: dict = field(default_factory=dict)

    @classmethod
    def build(cls, kind, columns, rows, parameters, version, extra=None):
        meta = {
            "generator": f"hyperbell {version}",
            "parameters": parameters,
            "timestamp": datetime.now(timezone.utc).isoformat(),
        }
        return cls(kind, list(columns), [list(r) for r in rows], extra or {}, meta)


def render(doc: OutputDocument, fmt: str) -> str:
    if fmt == "csv":
        return _render_csv(doc)
    if fmt == "json":
        return _render_json(doc)
    if fmt == "plain":
        return _render_plain(doc)
    raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")


def _render_csv(doc: OutputDocument) -> str:
    lines = [",".join(doc.columns)]
    lines.extend(",".join(row) for row in doc.rows)
    return "\n".join(lines) + "\n"


def _render_json(doc: OutputDocument) -> str:
    payload = {
        "kind": doc.kind,
        "metadata": doc.metadata,
        "columns": doc.columns,
        "rows": doc.rows,
    }
    payload.update(doc.extra)
    return json.dumps(payload, indent=2) + "\n"


def _render_plain(doc: OutputDocument) -> str:
    table = [doc.columns] + doc.rows
    widths = [max(len(row[i]) for row in table) for i in range(len(doc.columns))]
    lines = ["  ".join(cell.rjust(w) for cell, w in zip(row, widths)) for row in table]
    return "\n".join(lines) + "\n"
