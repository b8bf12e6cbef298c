"""Hand-encoded list of all groups of order <= 15, one per isomorphism class."""
from __future__ import annotations

import json
import os
from dataclasses import dataclass
from functools import lru_cache

from .build import abelian, alternating, cyclic, dicyclic, dihedral, from_cayley, quaternion, symmetric
from .table import GroupTable

COMPLETE_UP_TO = 15

# (order, name, constructor)
_ENTRIES = [
    (1, "C1", lambda: cyclic(1)),
    (2, "C2", lambda: cyclic(2)),
    (3, "C3", lambda: cyclic(3)),
    (4, "C4", lambda: cyclic(4)),
    (4, "C2xC2", lambda: abelian(2, 2)),
    (5, "C5", lambda: cyclic(5)),
    (6, "C6", lambda: cyclic(6)),
    (6, "S3", lambda: symmetric(3)),
    (7, "C7", lambda: cyclic(7)),
    (8, "C8", lambda: cyclic(8)),
    (8, "C4xC2", lambda: abelian(2, 4)),
    (8, "C2xC2xC2", lambda: abelian(2, 2, 2)),
    (8, "D8", lambda: dihedral(8)),
    (8, "Q8", lambda: quaternion(8)),
    (9, "C9", lambda: cyclic(9)),
    (9, "C3xC3", lambda: abelian(3, 3)),
    (10, "C10", lambda: cyclic(10)),
    (10, "D10", lambda: dihedral(10)),
    (11, "C11", lambda: cyclic(11)),
    (12, "C12", lambda: cyclic(12)),
    (12, "C6xC2", lambda: abelian(2, 6)),
    (12, "A4", lambda: alternating(4)),
    (12, "D12", lambda: dihedral(12)),
    (12, "Dic12", lambda: dicyclic(12)),
    (13, "C13", lambda: cyclic(13)),
    (14, "C14", lambda: cyclic(14)),
    (14, "D14", lambda: dihedral(14)),
    (15, "C15", lambda: cyclic(15)),
]


@dataclass(frozen=True)
class Catalog:
    groups: tuple[GroupTable, ...]
    max_order: int
    complete: bool

    def __iter__(self):
        return iter(self.groups)

    def __len__(self):
        return len(self.groups)

    def by_name(self, name: str) -> GroupTable:
        for g in self.groups:
            if g.name == name:
                return g
        raise KeyError(name)


@lru_cache(maxsize=64)
def _builtin(name: str) -> GroupTable:
    for _, n, make in _ENTRIES:
        if n == name:
            g = make()
            return GroupTable(g.mul, g.labels, n, g.factors)
    raise KeyError(name)


def small_catalog(max_order: int, extra_path: str | None = None) -> Catalog:
    """Groups of order <= max_order. Complete only up to order 15; extra groups can be
    appended from a JSON list of Cayley tables (``FIBRUM_CATALOG``)."""
    groups = [_builtin(n) for o, n, _ in _ENTRIES if o <= max_order]
    path = extra_path if extra_path is not None else os.environ.get("FIBRUM_CATALOG")
    if path:
        with open(path) as fh:
            docs = json.load(fh)
        from .homs import isomorphic

        for doc in docs:
            g = from_cayley(doc)
            if g.order <= max_order and not any(isomorphic(g, h) for h in groups):
                groups.append(g)
        groups.sort(key=lambda g: g.order)
    return Catalog(tuple(groups), max_order, max_order <= COMPLETE_UP_TO)


def catalog_group(name: str) -> GroupTable:
    return _builtin(name)
