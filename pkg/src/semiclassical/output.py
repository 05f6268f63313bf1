"""Deterministic CSV/JSON tables: named columns plus a metadata header."""
import json
import math

import numpy as np

__all__ = ["write_table", "read_table", "format_value"]


def format_value(v) -> str:
    if isinstance(v, (bool, np.bool_)):
        return "1" if v else "0"
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return "%.17g" % float(v)


def _meta_text(v):
    if isinstance(v, float):
        return format_value(v)
    if isinstance(v, (list, tuple)):
        return " ".join(_meta_text(x) for x in v)
    return str(v)


def write_table(path, columns: dict, meta: dict = None, fmt: str = "csv") -> str:
    """Write equal-length ``columns`` to ``path`` (``"-"`` for the return value only).

    CSV starts with ``# key: value`` lines for ``meta``, then a header row.
    Floats use 17 significant digits so values survive a round trip.
    JSON holds ``{"meta": ..., "columns": ...}`` with NaN stored as null.
    """
    names = list(columns)
    arrays = [list(np.atleast_1d(columns[n])) for n in names]
    lengths = {len(a) for a in arrays}
    if len(lengths) > 1:
        raise ValueError("columns differ in length")
    meta = dict(meta or {})
    if fmt == "csv":
        lines = [f"# {k}: {_meta_text(v)}" for k, v in meta.items()]
        lines.append(",".join(names))
        for row in zip(*arrays):
            lines.append(",".join(format_value(v) for v in row))
        text = "\n".join(lines) + "\n"
    elif fmt == "json":
        def clean(v):
            if isinstance(v, (bool, np.bool_)):
                return bool(v)
            if isinstance(v, (int, np.integer)):
                return int(v)
            if isinstance(v, (float, np.floating)):
                return None if math.isnan(v) else float(v)
            if isinstance(v, (list, tuple)):
                return [clean(x) for x in v]
            return v

        payload = {"meta": {k: clean(v) for k, v in meta.items()},
                   "columns": {n: [clean(v) for v in a] for n, a in zip(names, arrays)}}
        text = json.dumps(payload, indent=1, allow_nan=False) + "\n"
    else:
        raise ValueError(f"unknown format {fmt!r}; use csv or json")
    if path and path != "-":
        with open(path, "w") as fh:
            fh.write(text)
    return text


def read_table(path, fmt: str = None):
    """Inverse of :func:`write_table`; returns ``(columns, meta)``.

    CSV metadata comes back as strings; JSON metadata keeps its types.
    """
    fmt = fmt or ("json" if str(path).endswith(".json") else "csv")
    with open(path) as fh:
        text = fh.read()
    if fmt == "json":
        payload = json.loads(text)
        cols = {k: np.array([np.nan if v is None else v for v in vals], dtype=float)
                for k, vals in payload["columns"].items()}
        return cols, payload["meta"]
    meta = {}
    rows = []
    header = None
    for line in text.splitlines():
        if line.startswith("#"):
            key, _, val = line[1:].partition(":")
            meta[key.strip()] = val.strip()
        elif header is None:
            header = line.split(",")
        elif line:
            rows.append([float(v) for v in line.split(",")])
    data = np.array(rows, dtype=float).reshape(-1, len(header))
    return {h: data[:, i] for i, h in enumerate(header)}, meta
