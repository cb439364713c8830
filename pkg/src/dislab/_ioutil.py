"""Deterministic JSON/CSV formatting shared by the report writers.

Floats are rendered with 17 significant digits so that identical inputs
produce byte-identical files and every value round-trips exactly.
"""

from __future__ import annotations

import math

__all__ = ["fmt_float", "dumps_json", "write_text"]


def fmt_float(x: float) -> str:
    x = float(x)
    if math.isnan(x):
        return "nan"
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    return format(x, ".17g")


def _encode(obj, parts: list, indent: int) -> None:
    pad = "  " * indent
    if isinstance(obj, dict):
        if not obj:
            parts.append("{}")
            return
        parts.append("{\n")
        for i, (key, val) in enumerate(obj.items()):
            parts.append(f'{pad}  "{key}": ')
            _encode(val, parts, indent + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "}")
    elif isinstance(obj, (list, tuple)):
        if len(obj) == 0:
            parts.append("[]")
            return
        parts.append("[\n")
        for i, val in enumerate(obj):
            parts.append(pad + "  ")
            _encode(val, parts, indent + 1)
            parts.append(",\n" if i < len(obj) - 1 else "\n")
        parts.append(pad + "]")
    elif isinstance(obj, bool):
        parts.append("true" if obj else "false")
    elif obj is None:
        parts.append("null")
    elif isinstance(obj, int):
        parts.append(str(obj))
    elif isinstance(obj, float):
        if math.isnan(obj):
            parts.append("NaN")
        elif math.isinf(obj):
            parts.append("Infinity" if obj > 0 else "-Infinity")
        else:
            parts.append(fmt_float(obj))
    elif isinstance(obj, str):
        escaped = obj.replace("\\", "\\\\").replace('"', '\\"')
        parts.append(f'"{escaped}"')
    else:
        raise TypeError(f"cannot serialize {type(obj).__name__}")


def dumps_json(obj) -> str:
    """Serialize dict/list/scalar trees; key order is preserved."""
    parts: list = []
    _encode(obj, parts, 0)
    parts.append("\n")
    return "".join(parts)


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)
