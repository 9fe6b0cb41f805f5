"""Deterministic CSV/JSON emission.

CSV numbers carry 17 significant digits and JSON floats use shortest
round-trip notation, so every double survives write/read exactly.  Output is
byte-identical for identical inputs.
"""

from __future__ import annotations

import json

__all__ = ["fmt17", "write_csv", "write_json"]


def fmt17(x) -> str:
    return format(float(x), ".17g")


def write_csv(path, header, rows):
    """Write rows of floats under a comma-separated header."""
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        fh.write(",".join(header) + "\n")
        for row in rows:
            fh.write(",".join(fmt17(v) for v in row) + "\n")


def write_json(path, obj):
    with open(path, "w", encoding="ascii", newline="\n") as fh:
        json.dump(obj, fh, indent=2, sort_keys=True)
        fh.write("\n")
