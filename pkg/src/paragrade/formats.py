"""JSON helpers shared by the CLI: matrices, spaces and deterministic dumps."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any

import numpy as np

from .graded_algebra import GradedOperator
from .grading import GradingVector

__all__ = ["MATRIX_FORMAT", "operator_to_json", "operator_from_json", "load_operator", "dumps"]

MATRIX_FORMAT = "paragrade.matrix/1"


def operator_to_json(op: GradedOperator) -> dict:
    return {
        "format": MATRIX_FORMAT,
        "label": op.label,
        "dim": op.dim,
        "grading": list(op.grading.bits),
        "entries": [[float(z.real), float(z.imag)] for z in op.matrix.ravel()],
    }


def operator_from_json(data: dict, label: str | None = None) -> GradedOperator:
    try:
        dim = int(data["dim"])
        bits = tuple(int(b) for b in data["grading"])
        entries = data["entries"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"matrix JSON needs dim, grading and entries ({exc})") from None
    if len(entries) != dim * dim:
        raise ValueError(f"expected {dim * dim} entries for dim {dim}, got {len(entries)}")
    vals = []
    for e in entries:
        if isinstance(e, (int, float)):
            vals.append(complex(e))
        else:
            re, im = e
            vals.append(complex(re, im))
    m = np.array(vals, dtype=np.complex128).reshape(dim, dim)
    return GradedOperator(label or data.get("label") or "op", GradingVector(bits), m)


def load_operator(path: str | Path) -> GradedOperator:
    p = Path(path)
    with p.open() as fh:
        data = json.load(fh)
    return operator_from_json(data, label=data.get("label") or p.stem)


def _clean(x: Any) -> Any:
    if isinstance(x, dict):
        return {str(k): _clean(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_clean(v) for v in x]
    if isinstance(x, (np.integer,)):
        return int(x)
    if isinstance(x, (np.floating, float)):
        v = float(x)
        return 0.0 if v == 0 else v
    if isinstance(x, np.bool_):
        return bool(x)
    return x


def dumps(obj: Any) -> str:
    """Sorted-key, indented JSON; identical input gives identical bytes."""
    return json.dumps(_clean(obj), sort_keys=True, indent=2)
