"""CSV / JSON-lines serialization of flat result records.

Floats go out with 17 significant digits in CSV and as shortest
round-trip repr in JSON, so both formats reproduce values bit-exactly.
"""

from __future__ import annotations

import csv
import io
import json


def _cell(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, float):
        s = format(x, ".17g")
        # keep floats distinguishable from ints on the way back in
        return s if any(ch in s for ch in ".ein") else s + ".0"
    return str(x)


def emit(records, fmt: str = "csv", fields=None) -> str:
    """Serialize homogeneous records (dicts or objects with ``to_record``).

    ``fields`` fixes the CSV header and column order; it defaults to the
    keys of the first record, and is required to get a header out of an
    empty list.
    """
    rows = [r.to_record() if hasattr(r, "to_record") else dict(r) for r in records]
    if fmt in ("jsonl", "json-lines"):
        return "".join(json.dumps(r) + "\n" for r in rows)
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    if fields is None:
        fields = list(rows[0]) if rows else []
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for r in rows:
        writer.writerow([_cell(r[f]) for f in fields])
    return buf.getvalue()


def _parse_cell(s: str):
    if s in ("true", "false"):
        return s == "true"
    try:
        return int(s)
    except ValueError:
        pass
    try:
        return float(s)
    except ValueError:
        return s


def parse_csv(text: str) -> list[dict]:
    """Inverse of :func:`emit` for CSV output."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, [])
    out = []
    for row in reader:
        rec = {}
        for key, cell in zip(header, row):
            rec[key] = _parse_cell(cell)
        out.append(rec)
    return out

