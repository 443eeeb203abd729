"""CSV/JSON emission for every row type, with typed parsing back."""
from __future__ import annotations

import csv
import io
import json


def _bool(text: str) -> bool:
    if text in ("true", "True", "1"):
        return True
    if text in ("false", "False", "0"):
        return False
    raise ValueError(f"not a boolean: {text!r}")


SCHEMAS: dict[str, list[tuple[str, type]]] = {
    "sequence": [("n", int), ("P", int), ("root", int), ("a", int)],
    "sequence_b": [("n", int), ("P", int), ("root", int), ("a", int), ("b", int)],
    "cache": [("n", int), ("a", int)],
    "average": [("x", int), ("q", int), ("b", int), ("raw_sum", int), ("average", float),
                ("main_term", float), ("residual", float), ("ratio", float)],
    "twist": [("q", int), ("char_index", int), ("x", int), ("re_S", float), ("im_S", float),
              ("main_term", float), ("residual_abs", float)],
    "discrepancy": [("N", int), ("q", int), ("b", int), ("start", int), ("D_star", float),
                    ("D", float), ("ET_bound_K", float), ("satisfied", bool)],
    "kn": [("start", int), ("end", int), ("q", int), ("m", int), ("measured", float),
           ("bound", float), ("satisfied", bool)],
    "series": [("series_id", str), ("s", float), ("N", int), ("re", float), ("im", float)],
    "cesaro": [("x", int), ("S_numerator", int), ("value", float), ("main_term", float),
               ("ratio", float)],
    "residue": [("s", float), ("N", int), ("product", float), ("target", float)],
    "fit": [("slope", float), ("intercept", float), ("r_squared", float), ("point_count", int)],
}

_PARSE = {int: int, float: float, str: str, bool: _bool}


def _fmt(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    return str(value)


def render(rows, schema: str, fmt: str = "csv") -> str:
    fields = [name for name, _ in SCHEMAS[schema]]
    rows = [{k: row[k] for k in fields} for row in rows]
    if fmt == "json":
        return json.dumps(rows, indent=1) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(fields)
    for row in rows:
        writer.writerow([_fmt(row[k]) for k in fields])
    return buf.getvalue()


def parse(text: str, schema: str, fmt: str = "csv") -> list[dict]:
    types = dict(SCHEMAS[schema])
    if fmt == "json":
        return [{k: (_bool(v) if types[k] is bool and isinstance(v, str) else v)
                 for k, v in row.items()} for row in json.loads(text)]
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != [name for name, _ in SCHEMAS[schema]]:
        raise ValueError(f"header {reader.fieldnames} does not match schema {schema!r}")
    return [{k: _PARSE[types[k]](v) for k, v in row.items()} for row in reader]


def read_columns(text: str, xcol: str, ycol: str) -> list[tuple[float, float]]:
    """Pull two numeric columns out of any emitted CSV or JSON table."""
    stripped = text.lstrip()
    if stripped.startswith("["):
        rows = json.loads(stripped)
    else:
        rows = list(csv.DictReader(io.StringIO(text)))
    if not rows:
        raise ValueError("table has no rows")
    missing = [c for c in (xcol, ycol) if c not in rows[0]]
    if missing:
        raise ValueError(f"missing columns {missing}; have {list(rows[0])}")
    return [(float(r[xcol]), float(r[ycol])) for r in rows]
