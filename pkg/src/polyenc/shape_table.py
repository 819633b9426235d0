"""Tabulation of the arity shape (a, b) -> (m, n) with its invariants I, J."""
from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from typing import Dict, Optional, Tuple

from .ring import ArityShape, CongruenceClass, arity_shape

__all__ = ["ShapeTable", "build_table", "render_table", "FORMATS"]

FORMATS = ("text", "csv")
CSV_COLUMNS = ("a", "b", "m", "n", "I", "J")


@dataclass(frozen=True)
class ShapeTable:
    a_max: int
    b_max: int
    # None marks a class without multiplicative arity (no ring)
    cells: Dict[Tuple[int, int], Optional[ArityShape]] = field(default_factory=dict)

    def __getitem__(self, ab: Tuple[int, int]) -> Optional[ArityShape]:
        return self.cells[ab]

    def keys(self):
        """Cell coordinates, row-major by a then b."""
        return sorted(self.cells)


def build_table(a_max: int, b_max: int) -> ShapeTable:
    if a_max < 1:
        raise ValueError(f"a_max must be >= 1, got {a_max}")
    if b_max < 2:
        raise ValueError(f"b_max must be >= 2, got {b_max}")
    cells = {}
    for a in range(1, a_max + 1):
        for b in range(a + 1, b_max + 1):
            shape = arity_shape(CongruenceClass(a, b))
            cells[a, b] = shape if shape.is_ring else None
    return ShapeTable(a_max, b_max, cells)


def _render_text(table: ShapeTable) -> str:
    lines = []
    for a in range(1, table.a_max + 1):
        parts = [f"a={a}"]
        for b in range(a + 1, table.b_max + 1):
            shape = table.cells[a, b]
            parts.append(f"b={b}: {shape}" if shape else f"b={b}:")
        if len(parts) > 1:
            lines.append(" | ".join(parts))
    return "\n".join(lines) + "\n" if lines else ""


def _render_csv(table: ShapeTable) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_COLUMNS)
    for a, b in table.keys():
        shape = table.cells[a, b]
        if shape is None:
            writer.writerow((a, b, "", "", "", ""))
        else:
            writer.writerow((a, b, shape.m, shape.n, shape.I, shape.J))
    return buf.getvalue()


def render_table(table: ShapeTable, format: str = "text") -> str:
    """Render rows ordered by a then b; no-ring cells are left empty."""
    if table.a_max < 1 or table.b_max < 2:
        raise ValueError("table range is empty")
    if format == "text":
        return _render_text(table)
    if format == "csv":
        return _render_csv(table)
    raise ValueError(f"unknown format {format!r}, expected one of {FORMATS}")
