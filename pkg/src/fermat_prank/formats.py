"""Rendering of flat records as markdown, CSV or line-delimited JSON."""

from __future__ import annotations

import csv
import io
import json
from collections.abc import Iterable, Sequence

FORMATS = ("md", "csv", "json")


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    return str(v)


def render_json_line(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False)


def render(records: Iterable[dict], columns: Sequence[str], fmt: str) -> str:
    """Render records; the output always ends with a newline."""
    records = list(records)
    if fmt == "json":
        return "".join(render_json_line(r) + "\n" for r in records)
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(columns)
        for r in records:
            w.writerow([_cell(r.get(c)) for c in columns])
        return buf.getvalue()
    if fmt == "md":
        lines = ["| " + " | ".join(columns) + " |", "|" + "|".join("---" for _ in columns) + "|"]
        for r in records:
            cells = (_cell(r.get(c)).replace("|", "\\|") for c in columns)
            lines.append("| " + " | ".join(cells) + " |")
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown format {fmt!r}")
