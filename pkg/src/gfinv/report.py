"""Deterministic JSON and plain-text rendering of command results."""

from __future__ import annotations

import json
import math
from fractions import Fraction

import numpy as np

__all__ = ["dumps", "format_float", "render_table"]


def format_float(x: float) -> str:
    """17 significant digits, which round-trips any double."""
    if not math.isfinite(x):
        return "null"
    if x == 0:
        return "0.0"
    s = format(x, ".17g")
    if "e" not in s and "." not in s:
        s += ".0"
    return s


def _encode(obj, indent, level, out):
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if obj is None or isinstance(obj, (bool, np.bool_)):
        out.append("null" if obj is None else ("true" if obj else "false"))
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(format_float(float(obj)))
    elif isinstance(obj, Fraction):
        out.append(json.dumps(str(obj)))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        if not obj:
            out.append("{}")
            return
        out.append("{\n")
        keys = sorted(obj, key=str)
        for i, k in enumerate(keys):
            out.append(pad + json.dumps(str(k)) + ": ")
            _encode(obj[k], indent, level + 1, out)
            out.append(",\n" if i < len(keys) - 1 else "\n")
        out.append(end + "}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        items = list(obj)
        if not items:
            out.append("[]")
            return
        # short scalar lists stay on one line
        if all(isinstance(v, (int, float, str, np.number)) and not isinstance(v, bool) for v in items) and len(items) <= 8:
            parts = []
            for v in items:
                sub = []
                _encode(v, indent, level + 1, sub)
                parts.append("".join(sub))
            out.append("[" + ", ".join(parts) + "]")
            return
        out.append("[\n")
        for i, v in enumerate(items):
            out.append(pad)
            _encode(v, indent, level + 1, out)
            out.append(",\n" if i < len(items) - 1 else "\n")
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps(obj, indent: int = 2) -> str:
    """JSON with sorted keys and 17-digit floats; NaN and inf become null.

    The standard encoder picks the shortest repr for floats, which is
    exact but not fixed-width; this keeps every float at 17 digits.
    """
    out = []
    _encode(obj, indent, 0, out)
    return "".join(out) + "\n"


def render_table(rows: list[dict], columns: list[str] | None = None) -> str:
    """Fixed-width text table, floats in ``%.10g``."""
    if not rows:
        return "(empty)\n"
    columns = columns or list(rows[0])

    def cell(v):
        if isinstance(v, float):
            return format(v, ".10g")
        if v is None:
            return "-"
        return str(v)

    cells = [[cell(r.get(c)) for c in columns] for r in rows]
    widths = [max(len(c), *(len(row[i]) for row in cells)) for i, c in enumerate(columns)]
    lines = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    lines.append("  ".join("-" * w for w in widths))
    for row in cells:
        lines.append("  ".join(v.ljust(w) for v, w in zip(row, widths)).rstrip())
    return "\n".join(lines) + "\n"
