"""
Renderers for report rows: JSON, CSV and aligned plain-text tables.
"""

import csv
import io
import json
from typing import Any, Dict, List, Optional, Sequence

from .models import OutputFormat


def _cell(value: Any) -> str:
    if value is None:
        return "-"
    if isinstance(value, bool):
        return "yes" if value else "no"
    if isinstance(value, list):
        return ";".join(_cell(v) for v in value)
    return str(value)


def render_json(rows: List[Dict[str, Any]]) -> str:
    """
    Render rows as a JSON array.

    Args:
        rows: Serialized report rows (infinities already encoded)

    Returns:
        Deterministic JSON text with sorted keys and a trailing newline
    """
    return json.dumps(rows, indent=2, sort_keys=True) + "\n"


def render_csv(rows: List[Dict[str, Any]], columns: Optional[Sequence[str]] = None) -> str:
    """Render rows as CSV in schema column order; lists join with ';'."""
    if not rows:
        return ""
    columns = list(columns or rows[0].keys())
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerow(columns)
    for row in rows:
        writer.writerow([_cell(row.get(c)) if row.get(c) is not None else "" for c in columns])
    return buffer.getvalue()


def render_table(rows: List[Dict[str, Any]], columns: Optional[Sequence[str]] = None,
                 title: Optional[str] = None) -> str:
    """Render rows as an aligned text table."""
    if not rows:
        return (f"{title}\n" if title else "") + "(no rows)\n"
    columns = list(columns or rows[0].keys())
    cells = [[_cell(row.get(c)) for c in columns] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) for i, c in enumerate(columns)]
    lines = []
    if title:
        lines.append(title)
    lines.append("  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip())
    lines.append("  ".join("-" * w for w in widths))
    for r in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(r, widths)).rstrip())
    return "\n".join(lines) + "\n"


def render(rows: List[Dict[str, Any]], output_format: OutputFormat,
           columns: Optional[Sequence[str]] = None, title: Optional[str] = None) -> str:
    if output_format == OutputFormat.JSON:
        return render_json(rows)
    if output_format == OutputFormat.CSV:
        return render_csv(rows, columns)
    return render_table(rows, columns, title)
