"""Deterministic artifact serialization.

Serialized artifacts round floats to 6 significant digits and order keys
and rows, so two runs on identical inputs are byte-identical. Full
precision is kept in memory; only the on-disk form is rounded.
"""
from __future__ import annotations

import json
from typing import Any, Iterable

SIG_DIGITS = 6


def round_sig(x: float, digits: int = SIG_DIGITS) -> float:
    """Round to ``digits`` significant digits (exact for ints and zeros)."""
    if x == 0:
        return 0.0
    return float(f"{x:.{digits}g}")


def canonical(obj: Any) -> Any:
    """Recursively round floats; leave ints, strings and bools alone."""
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, float):
        return round_sig(obj)
    if isinstance(obj, dict):
        return {k: canonical(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [canonical(v) for v in obj]
    return obj


def json_text(obj: Any) -> str:
    return json.dumps(canonical(obj), sort_keys=True, indent=2,
                      ensure_ascii=False) + "\n"


def format_cell(value: Any) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return f"{value:.{SIG_DIGITS}g}"
    return str(value)


def csv_text(header: Iterable[str], rows: Iterable[Iterable[Any]]) -> str:
    lines = [",".join(header)]
    lines.extend(",".join(format_cell(v) for v in row) for row in rows)
    return "\n".join(lines) + "\n"
