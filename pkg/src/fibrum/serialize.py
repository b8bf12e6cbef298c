"""Versioned JSON documents for the public types."""
from __future__ import annotations

import json
from fractions import Fraction
from typing import Any

from .errors import FormatError, PreconditionError
from .fib import FiberedElement, FiberPair, Ring, make_pair
from .grp import GroupTable, build_group, to_cayley
from .idem import CentralPair, central_pair
from .lin import ClassFunction

SCHEMAS = {
    "group": "fibrum/group/v1",
    "pair": "fibrum/pair/v1",
    "element": "fibrum/element/v1",
    "central-pair": "fibrum/central-pair/v1",
    "classfunction": "fibrum/classfunction/v1",
}


def dumps(doc: Any) -> str:
    """Deterministic JSON text."""
    return json.dumps(doc, sort_keys=True, indent=2, default=_default) + "\n"


def _default(x):
    if isinstance(x, Fraction):
        return str(x)
    if hasattr(x, "item"):
        return x.item()
    raise TypeError(f"not JSON serializable: {type(x).__name__}")


def loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"malformed JSON: {exc.msg} at line {exc.lineno}") from exc


def _expect(doc: Any, kind: str) -> dict:
    if not isinstance(doc, dict):
        raise FormatError(f"expected a {kind} document, got {type(doc).__name__}")
    schema = doc.get("schema")
    if schema != SCHEMAS[kind]:
        raise FormatError(f"schema mismatch: expected {SCHEMAS[kind]!r}, got {schema!r}")
    return doc


def _field(doc: dict, key: str):
    try:
        return doc[key]
    except KeyError:
        raise FormatError(f"missing field {key!r}") from None


# -- groups ---------------------------------------------------------------------


def dump_group(G: GroupTable) -> dict:
    return {"schema": SCHEMAS["group"], **to_cayley(G)}


def load_group(doc: Any) -> GroupTable:
    """A group document, a bare Cayley dict, or a group name."""
    if isinstance(doc, str):
        return build_group(doc)
    if isinstance(doc, dict) and "schema" in doc:
        _expect(doc, "group")
    if not isinstance(doc, dict):
        raise FormatError("a group is given by a name or a Cayley-table document")
    return build_group({k: v for k, v in doc.items() if k != "schema"})


# -- pairs and elements ------------------------------------------------------------


def _pair_body(p: FiberPair) -> dict:
    return {"u": [list(x) for x in p.pairs], "phi": list(p.phi)}


def dump_pair(p: FiberPair) -> dict:
    return {"schema": SCHEMAS["pair"], "g": dump_group(p.g), "h": dump_group(p.h), "N": p.N, **_pair_body(p)}


def _make(G: GroupTable, H: GroupTable, N: int, body: dict) -> FiberPair:
    u = _field(body, "u")
    phi = body.get("phi")
    try:
        return make_pair(G, H, N, [tuple(x) for x in u], phi)
    except (TypeError, ValueError) as exc:
        if isinstance(exc, PreconditionError):
            raise
        raise FormatError(f"malformed pair: {exc}") from exc


def load_pair(doc: Any, g: GroupTable | None = None, h: GroupTable | None = None) -> FiberPair:
    doc = _expect(doc, "pair")
    G = load_group(doc["g"]) if "g" in doc else g
    H = load_group(doc["h"]) if "h" in doc else h
    if G is None or H is None:
        raise FormatError("pair document names no groups and none were supplied")
    return _make(G, H, int(_field(doc, "N")), doc)


def dump_element(x: FiberedElement) -> dict:
    terms = sorted(x, key=lambda t: t[0].key)
    return {
        "schema": SCHEMAS["element"],
        "g": dump_group(x.g),
        "h": dump_group(x.h),
        "N": x.N,
        "ring": x.ring.name,
        "terms": [{**_pair_body(p), "coeff": x.ring.to_str(c)} for p, c in terms],
    }


def load_element(doc: Any, g: GroupTable | None = None, h: GroupTable | None = None) -> FiberedElement:
    doc = _expect(doc, "element")
    G = load_group(doc["g"]) if "g" in doc else g
    H = load_group(doc["h"]) if "h" in doc else h
    if G is None or H is None:
        raise FormatError("element document names no groups and none were supplied")
    N = int(_field(doc, "N"))
    ring = Ring.from_name(str(doc.get("ring", "Z")))
    terms = _field(doc, "terms")
    if not isinstance(terms, list):
        raise FormatError("terms must be a list")
    items = [(_make(G, H, N, t), ring.parse(str(t.get("coeff", 1)))) for t in terms]
    return FiberedElement.from_terms(G, H, N, items, ring)


# -- central pairs and class functions ----------------------------------------------


def dump_central_pair(cp: CentralPair) -> dict:
    return {"schema": SCHEMAS["central-pair"], "g": dump_group(cp.g), **cp.to_json()}


def load_central_pair(doc: Any, g: GroupTable | None = None) -> CentralPair:
    doc = _expect(doc, "central-pair")
    G = load_group(doc["g"]) if "g" in doc else g
    if G is None:
        raise FormatError("central pair document names no group")
    return central_pair(G, list(_field(doc, "k")), list(_field(doc, "kappa")), int(_field(doc, "N")))


def dump_class_function(f: ClassFunction) -> dict:
    return {**f.to_json(), "g": dump_group(f.g)}


def load_class_function(doc: Any) -> ClassFunction:
    doc = _expect(doc, "classfunction")
    G = load_group(_field(doc, "g"))
    return ClassFunction(G, int(_field(doc, "p")), int(_field(doc, "N")), tuple(int(v) for v in _field(doc, "values")))
