"""Text formats: coefficient JSON, grid CSV, quadrature CSV.

Every float is written with 17 significant digits and '.' as decimal
separator so output is byte-reproducible and round-trips exactly.
"""

from __future__ import annotations

import csv
import io
import json
import math

import numpy as np

from .families import GridSamples, get_family
from .ladder import CoefficientVector
from .quadrature import QuadratureRule

__all__ = [
    "fmt",
    "dumps_json",
    "coefficients_to_dict",
    "coefficients_to_json",
    "coefficients_from_json",
    "grid_to_csv",
    "grid_from_csv",
    "quadrature_to_csv",
    "quadrature_to_json",
]


def fmt(x: float) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialise non-finite number {x}")
    if x == 0.0:
        return "0"  # drop the sign of negative zero
    return format(x, ".17g")


def _encode(obj, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return fmt(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_encode(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if not len(obj):
            return "[]"
        if all(isinstance(v, (int, float, np.number)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_encode(v, indent, level + 1) for v in obj) + "]"
        items = [pad + _encode(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps_json(obj, indent: int = 2) -> str:
    """JSON text with fixed 17-digit floats and insertion-ordered keys."""
    return _encode(obj, indent, 0) + "\n"


def coefficients_to_dict(v: CoefficientVector) -> dict:
    return {
        "family": v.family.name,
        "n_max": v.n_max,
        "coeffs": [[c.real, c.imag] for c in v.coeffs],
    }


def coefficients_to_json(v: CoefficientVector) -> str:
    return dumps_json(coefficients_to_dict(v))


def coefficients_from_json(text: str) -> CoefficientVector:
    doc = json.loads(text)
    try:
        family = get_family(doc["family"])
        n_max = int(doc["n_max"])
        pairs = doc["coeffs"]
    except KeyError as exc:
        raise ValueError(f"coefficient document is missing field {exc.args[0]!r}") from None
    if len(pairs) != n_max + 1:
        raise ValueError(f"n_max = {n_max} but {len(pairs)} coefficients given")
    coeffs = [complex(float(re), float(im)) for re, im in pairs]
    return CoefficientVector(family, coeffs)


def grid_to_csv(samples: GridSamples) -> str:
    lines = ["x,re,im"]
    lines += [f"{fmt(x)},{fmt(v.real)},{fmt(v.imag)}" for x, v in zip(samples.points, samples.values)]
    return "\n".join(lines) + "\n"


def grid_from_csv(text: str, family) -> GridSamples:
    reader = csv.reader(io.StringIO(text))
    header = [h.strip() for h in next(reader, [])]
    if header[:2] != ["x", "re"]:
        raise ValueError("grid CSV must start with the header 'x,re,im'")
    xs, vs = [], []
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        try:
            x = float(row[0])
            im = float(row[2]) if len(row) > 2 else 0.0
            vs.append(complex(float(row[1]), im))
        except (ValueError, IndexError):
            raise ValueError(f"malformed grid CSV line {lineno}: {','.join(row)}") from None
        xs.append(x)
    return GridSamples(get_family(family), xs, vs)


def quadrature_to_csv(rule: QuadratureRule) -> str:
    lines = ["node,weight"] + [f"{fmt(x)},{fmt(w)}" for x, w in zip(rule.nodes, rule.weights)]
    return "\n".join(lines) + "\n"


def quadrature_to_json(rule: QuadratureRule) -> str:
    return dumps_json(
        {
            "family": rule.family.name,
            "m": len(rule),
            "exact_degree": rule.exact_degree,
            "nodes": list(rule.nodes),
            "weights": list(rule.weights),
        }
    )
