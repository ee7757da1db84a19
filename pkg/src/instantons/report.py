"""Report envelopes and their json / csv / table renderings.

Every report is an ordered dict with the keys ``schemaVersion``, ``command``,
``inputs``, ``results`` and ``certifyingWindow``, in that order.  Rationals
are written as ``"num/den"`` strings so output is exact and byte-stable.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction

from .cohomology import InstantonNumbers, Window

SCHEMA_VERSION = 1


def envelope(command: str, inputs: dict, results, windows=None) -> dict:
    return {
        "schemaVersion": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "certifyingWindow": windows,
    }


def rational(v) -> str:
    v = Fraction(v)
    return f"{v.numerator}/{v.denominator}"


def window_pair(n: InstantonNumbers) -> dict:
    return {"width": _window(n.width_window), "height": _window(n.height_window)}


def _window(w: Window | None):
    return None if w is None else w.as_dict()


def to_json(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def to_csv(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO(newline="")
    writer = csv.writer(buf, lineterminator="\n", quoting=csv.QUOTE_MINIMAL)
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if v is None else v for v in row])
    return buf.getvalue()


def to_table(header: list[str], rows: list[list], title: str | None = None) -> str:
    cells = [[str(h) for h in header]] + [["-" if v is None else str(v) for v in row] for row in rows]
    widths = [max(len(r[k]) for r in cells) for k in range(len(header))]
    lines = []
    if title:
        lines.append(title)
    for n, row in enumerate(cells):
        lines.append("  ".join(c.ljust(w) for c, w in zip(row, widths)).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines) + "\n"
