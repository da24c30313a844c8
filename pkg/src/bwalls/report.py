"""Serialization of results into deterministic JSON report documents.

Rationals are written as ``"num/den"`` strings so every value parses back
exactly. Keys are sorted and output is indented, so identical inputs give
identical bytes.
"""
from __future__ import annotations

import dataclasses
import json
from enum import Enum
from fractions import Fraction
from typing import Any

from . import __version__
from .exactnum import QuadExpr, format_rational, parse_rational
from .lattice import DivisorClass, SurfaceData
from .presets import surface_to_dict


def to_jsonable(obj: Any) -> Any:
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Enum):
        return obj.value
    if isinstance(obj, int):
        return obj
    if isinstance(obj, Fraction):
        return format_rational(obj)
    if isinstance(obj, DivisorClass):
        return list(obj.coords)
    if isinstance(obj, QuadExpr):
        return {"p": format_rational(obj.p), "q": format_rational(obj.q), "d": obj.d}
    if isinstance(obj, SurfaceData):
        return surface_to_dict(obj)
    if dataclasses.is_dataclass(obj):
        out = {f.name: to_jsonable(getattr(obj, f.name)) for f in dataclasses.fields(obj)}
        for name in getattr(obj, "_extra_report_fields", ()):
            out[name] = to_jsonable(getattr(obj, name))
        return out
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, float):
        raise TypeError("floating-point values are not allowed in reports")
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def make_document(command: dict, surface: SurfaceData, body: dict) -> dict:
    doc = {"tool_version": __version__, "command": to_jsonable(command), "surface": surface_to_dict(surface)}
    doc.update(to_jsonable(body))
    return doc


def dumps(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n"


def parse_value(text: str) -> Fraction:
    """Inverse of the rational encoding used in reports."""
    return parse_rational(text)
