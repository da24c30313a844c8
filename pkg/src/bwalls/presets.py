"""Built-in surfaces and the JSON surface description format."""
from __future__ import annotations

import json
import re
from pathlib import Path
from typing import Any

from .errors import InputError, LatticeError
from .lattice import DivisorClass, PicardLattice, SurfaceData

PRESET_NAMES = ("P2", "P1xP1", "BlowupP2_k", "CoverP2_d")
_INDEXED = re.compile(r"^(BlowupP2|CoverP2)_(\d+)$")


def _preset_parts(name: str) -> tuple[list[list[int]], list[int], list[int] | None]:
    """(gram, canonical, default polarization or None)."""
    if name == "P2":
        return [[1]], [-3], [1]
    if name == "P1xP1":
        return [[0, 1], [1, 0]], [-2, -2], [1, 1]
    m = _INDEXED.match(name)
    if not m:
        raise InputError(f"unknown preset {name!r}; expected one of {', '.join(PRESET_NAMES)}")
    kind, idx = m.group(1), int(m.group(2))
    if kind == "BlowupP2":
        rank = idx + 1
        gram = [[0] * rank for _ in range(rank)]
        gram[0][0] = 1
        for i in range(1, rank):
            gram[i][i] = -1
        canonical = [-3] + [1] * idx
        default = [3] + [-1] * idx if idx <= 8 else None
        return gram, canonical, default
    if idx < 1:
        raise InputError("cover degree must be positive")
    # degree-d cover of P^2 with D the pullback of the anticanonical class; the
    # canonical class is taken as the pullback of K_P2 (ramification ignored)
    return [[idx]], [-3], [3]


def preset(name: str, polarization: list[int] | None = None) -> SurfaceData:
    gram, canonical, default = _preset_parts(name)
    pol = polarization if polarization is not None else default
    if pol is None:
        raise InputError(f"preset {name} has no default polarization; pass one explicitly")
    return build_surface(name, gram, canonical, pol)


def build_surface(name: str, gram, canonical, polarization, hints=()) -> SurfaceData:
    try:
        lat = PicardLattice(tuple(tuple(row) for row in gram), DivisorClass(tuple(canonical)))
        return SurfaceData(lat, DivisorClass(tuple(polarization)),
                           tuple((DivisorClass(tuple(c)), bool(e)) for c, e in hints), name)
    except (LatticeError, TypeError) as exc:
        raise InputError(f"invalid surface: {exc}") from exc


def _int_vector(value: Any, what: str) -> list[int]:
    if not isinstance(value, list) or not all(isinstance(v, int) and not isinstance(v, bool) for v in value):
        raise InputError(f"{what} must be a list of integers")
    return value


def surface_from_dict(doc: dict, polarization: list[int] | None = None) -> SurfaceData:
    """Build a surface from a parsed SurfaceSpec document."""
    if not isinstance(doc, dict):
        raise InputError("surface document must be a JSON object")
    if "preset" in doc:
        pol = polarization if polarization is not None else doc.get("polarization")
        s = preset(doc["preset"], pol)
        hints = _hints(doc.get("effective_hints", []))
        return build_surface(doc.get("name", s.name), s.lattice.gram, s.canonical.coords,
                             s.polarization.coords, hints)
    missing = [k for k in ("gram", "canonical", "polarization") if k not in doc]
    if missing:
        raise InputError(f"surface document is missing {', '.join(missing)}")
    gram = doc["gram"]
    if not isinstance(gram, list):
        raise InputError("gram must be a list of rows")
    gram = [_int_vector(row, "gram row") for row in gram]
    canonical = _int_vector(doc["canonical"], "canonical")
    pol = polarization if polarization is not None else _int_vector(doc["polarization"], "polarization")
    return build_surface(str(doc.get("name", "surface")), gram, canonical, pol,
                         _hints(doc.get("effective_hints", [])))


def _hints(raw: Any) -> list[tuple[list[int], bool]]:
    if not isinstance(raw, list):
        raise InputError("effective_hints must be a list")
    out = []
    for item in raw:
        if not isinstance(item, dict) or "class" not in item or not isinstance(item.get("effective"), bool):
            raise InputError("each effective hint needs 'class' and a boolean 'effective'")
        out.append((_int_vector(item["class"], "hint class"), item["effective"]))
    return out


def load_surface(path: str | Path, polarization: list[int] | None = None) -> SurfaceData:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InputError(f"malformed JSON in {path}: {exc}") from exc
    return surface_from_dict(doc, polarization)


def surface_to_dict(surface: SurfaceData) -> dict:
    return {
        "name": surface.name,
        "gram": [list(row) for row in surface.lattice.gram],
        "canonical": list(surface.canonical.coords),
        "polarization": list(surface.polarization.coords),
        "effective_hints": [{"class": list(c.coords), "effective": e} for c, e in surface.effective_hints],
    }
