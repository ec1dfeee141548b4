"""JSON formats for complexes, fields, stratifications and vertex data.

Complex file::

    {"simplices": [{"vertices": [1, 2], "value": 5.0}, ...],
     "strata": {"0": "a", "1": "b", ...},          # optional
     "meta": {...}}                                 # optional, ignored

Simplex ids are positions in the ``simplices`` list.  Values may be left
out for complexes that only carry vertex data.
"""

from __future__ import annotations

import json
import sys
from importlib import resources
from pathlib import Path
from typing import Any

from .core import Complex
from .errors import ParseError
from .morse import VectorField
from .strat import Stratification

FIXTURE_PREFIX = "fixture:"


def fixture_names() -> list[str]:
    data = resources.files("stratmorse") / "data"
    return sorted(p.name[:-5] for p in data.iterdir() if p.name.endswith(".json"))


def read_json(source: str | Path) -> Any:
    """Parse a file, ``-`` for stdin, or ``fixture:NAME`` for bundled data."""
    src = str(source)
    try:
        if src.startswith(FIXTURE_PREFIX):
            name = src[len(FIXTURE_PREFIX):]
            if name not in fixture_names():
                raise ParseError(f"unknown fixture {name!r}; have {', '.join(fixture_names())}")
            text = (resources.files("stratmorse") / "data" / f"{name}.json").read_text()
        elif src == "-":
            text = sys.stdin.read()
        else:
            text = Path(src).read_text()
        return json.loads(text)
    except (OSError, json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{src}: {exc}") from exc


def dumps(obj: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


class ComplexFile:
    """Parsed complex file."""

    def __init__(self, K: Complex, values: list[float] | None,
                 strata: Stratification | None, meta: dict):
        self.K = K
        self.values = values
        self.strata = strata
        self.meta = meta


def parse_complex(doc: Any) -> ComplexFile:
    if not isinstance(doc, dict) or not isinstance(doc.get("simplices"), list):
        raise ParseError("expected an object with a 'simplices' list")
    verts, vals = [], []
    for k, item in enumerate(doc["simplices"]):
        if not isinstance(item, dict) or not isinstance(item.get("vertices"), list) \
                or not item["vertices"]:
            raise ParseError(f"simplex {k}: needs a non-empty 'vertices' list")
        try:
            verts.append([int(v) for v in item["vertices"]])
        except (TypeError, ValueError) as exc:
            raise ParseError(f"simplex {k}: vertex ids must be integers") from exc
        if "value" in item:
            try:
                vals.append(float(item["value"]))
            except (TypeError, ValueError) as exc:
                raise ParseError(f"simplex {k}: bad value") from exc
    if vals and len(vals) != len(verts):
        raise ParseError("values must be given on every simplex or on none")
    try:
        K = Complex(verts)
    except ValueError as exc:
        raise ParseError(str(exc)) from exc
    strata = None
    if "strata" in doc:
        raw = doc["strata"]
        if not isinstance(raw, dict):
            raise ParseError("'strata' must map simplex index to stratum name")
        try:
            strata = Stratification.from_assignment({int(k): str(v) for k, v in raw.items()})
        except (TypeError, ValueError) as exc:
            raise ParseError("'strata' keys must be simplex indices") from exc
    meta = doc.get("meta", {})
    return ComplexFile(K, vals or None, strata, meta if isinstance(meta, dict) else {})


def load_complex(source: str | Path) -> ComplexFile:
    return parse_complex(read_json(source))


def complex_to_json(K: Complex, values=None, S: Stratification | None = None) -> dict:
    simp = []
    for k, t in enumerate(K.simplices):
        item: dict[str, Any] = {"vertices": list(t)}
        if values is not None:
            item["value"] = float(values[k])
        simp.append(item)
    doc: dict[str, Any] = {"simplices": simp}
    if S is not None:
        doc["strata"] = {str(i): S.s(i) for i in K}
    return doc


def parse_stratification(doc: Any) -> Stratification:
    """Either ``{name: [ids]}`` or a wrapper with a ``stratification`` key."""
    if isinstance(doc, dict) and "stratification" in doc:
        doc = doc["stratification"]
    if not isinstance(doc, dict):
        raise ParseError("stratification must map names to id lists")
    try:
        return Stratification.from_json(doc)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad stratification: {exc}") from exc


def load_stratification(source: str | Path) -> Stratification:
    return parse_stratification(read_json(source))


def parse_field(doc: Any) -> VectorField:
    if isinstance(doc, dict) and "pairs" in doc:
        doc = doc["pairs"]
    try:
        return VectorField.from_json(doc)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad vector field: {exc}") from exc


def parse_vertex_field(doc: Any) -> dict[int, float]:
    """``{"vertices": {"3": 0.7, ...}}`` to a vertex-id map."""
    if isinstance(doc, dict) and "vertices" in doc:
        doc = doc["vertices"]
    if not isinstance(doc, dict):
        raise ParseError("vertex field must map vertex ids to values")
    try:
        return {int(k): float(v) for k, v in doc.items()}
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad vertex field: {exc}") from exc


def load_vertex_field(source: str | Path) -> dict[int, float]:
    return parse_vertex_field(read_json(source))
