"""Deterministic JSON and CSV emission.

Floats are rendered with 17 significant digits (lossless double
round-trip); JSON objects are emitted with sorted keys and LF endings so
reruns are byte-identical.  Non-finite floats become the strings "inf",
"-inf", "nan" (JSON has no literals for them).
"""

from __future__ import annotations

import json
import math
from enum import Enum
from pathlib import Path

SCHEMA_VERSION = 1


def fmt_float(x: float) -> str:
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(float(x), ".17g")


def _render(obj) -> str:
    if obj is None:
        return "null"
    if isinstance(obj, bool):
        return "true" if obj else "false"
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        if math.isfinite(obj):
            return fmt_float(obj)
        return json.dumps(fmt_float(obj))
    if isinstance(obj, Enum):
        return _render(obj.value)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        items = sorted(obj.items(), key=lambda kv: str(kv[0]))
        body = ",".join(f"{json.dumps(str(k))}:{_render(v)}" for k, v in items)
        return "{" + body + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(_render(v) for v in obj) + "]"
    if hasattr(obj, "tolist"):  # numpy scalars and arrays
        return _render(obj.tolist())
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def json_dumps(obj) -> str:
    return _render(obj) + "\n"


def write_json(path: str | Path, obj) -> None:
    Path(path).write_text(json_dumps(obj), newline="\n")


def csv_cell(v) -> str:
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return fmt_float(v)
    if isinstance(v, Enum):
        return str(v.value)
    return str(v)


def csv_text(header: list[str], rows: list[list]) -> str:
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(csv_cell(v) for v in row))
    return "\n".join(lines) + "\n"


def write_csv(path: str | Path, header: list[str], rows: list[list]) -> None:
    Path(path).write_text(csv_text(header, rows), newline="\n")
