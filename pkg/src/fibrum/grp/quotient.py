from __future__ import annotations

from functools import lru_cache

from ..errors import PreconditionError
from .table import GroupHom, GroupTable, SubgroupRef


@lru_cache(maxsize=4096)
def quotient_group(G: GroupTable, N: SubgroupRef) -> tuple[GroupTable, GroupHom]:
    """G/N with cosets ordered by their minimal element (which is the representative)."""
    if N.parent != G:
        raise PreconditionError("subgroup belongs to another group")
    if not G.is_normal(N.elems):
        raise PreconditionError("quotient by a non-normal subgroup")
    coset = [-1] * G.order
    reps: list[int] = []
    for x in range(G.order):
        if coset[x] >= 0:
            continue
        c = len(reps)
        reps.append(x)
        for k in N.elems:
            coset[G.mul[x][k]] = c
    mul = tuple(tuple(coset[G.mul[a][b]] for b in reps) for a in reps)
    labels = tuple(G.labels[r] + ("" if N.order == 1 else "N") for r in reps)
    Q = GroupTable(mul, labels, f"{G.name}/{N.order}" if G.name else "")
    return Q, GroupHom(G, Q, tuple(coset))


@lru_cache(maxsize=4096)
def subgroup_table(H: SubgroupRef) -> tuple[GroupTable, GroupHom]:
    """H as a group in its own right (elements in increasing order) plus the inclusion."""
    G = H.parent
    pos = {x: i for i, x in enumerate(H.elems)}
    mul = tuple(tuple(pos[G.mul[a][b]] for b in H.elems) for a in H.elems)
    T = GroupTable(mul, tuple(G.labels[x] for x in H.elems), f"{G.name}[{H.order}]" if G.name else "")
    return T, GroupHom(T, G, H.elems)


def section_map(G: GroupTable, P: SubgroupRef, K: SubgroupRef) -> tuple[GroupTable, dict[int, int]]:
    """P/K for K normal in P, returned as a table plus the map P -> P/K on G-elements."""
    T, inc = subgroup_table(P)
    Ksub = SubgroupRef(T, tuple(sorted(inc.img.index(k) for k in K.elems)))
    Q, pi = quotient_group(T, Ksub)
    return Q, {inc.img[i]: pi.img[i] for i in range(T.order)}
