from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..errors import ResourceError
from .build import direct_product
from .homs import all_isomorphisms, isomorphic
from .quotient import section_map
from .table import GroupTable, SubgroupRef

LATTICE_BOUND = 48


@dataclass(frozen=True)
class SubgroupLattice:
    group: GroupTable
    subgroups: tuple[SubgroupRef, ...]     # sorted by (order, elements)
    normal: tuple[bool, ...]
    classes: tuple[tuple[int, ...], ...]   # conjugacy classes, as indices into subgroups

    @cached_property
    def _index(self) -> dict[tuple[int, ...], int]:
        return {s.elems: i for i, s in enumerate(self.subgroups)}

    def index(self, sub: SubgroupRef | tuple[int, ...]) -> int:
        return self._index[sub.elems if isinstance(sub, SubgroupRef) else tuple(sub)]

    def normal_subgroups(self) -> list[SubgroupRef]:
        return [s for s, n in zip(self.subgroups, self.normal) if n]

    def class_representatives(self) -> list[SubgroupRef]:
        return [self.subgroups[c[0]] for c in self.classes]


@lru_cache(maxsize=256)
def subgroup_lattice(G: GroupTable, bound: int = LATTICE_BOUND) -> SubgroupLattice:
    """All subgroups, by cyclic extension: start from the cyclic subgroups and keep
    adjoining one more cyclic generator until nothing new appears."""
    if G.order > bound:
        raise ResourceError(f"subgroup lattice bounded by |G| <= {bound}")
    cyclic: dict[tuple[int, ...], int] = {}
    for g in range(G.order):
        cyclic.setdefault(G.closure([g]), g)
    found: set[tuple[int, ...]] = set(cyclic)
    gens_of: dict[tuple[int, ...], list[int]] = {c: [g] for c, g in cyclic.items()}
    layer = list(cyclic)
    while layer:
        nxt = []
        for S in layer:
            Sset = set(S)
            for C, g in cyclic.items():
                if g in Sset:
                    continue
                T = G.closure(gens_of[S] + [g])
                if T not in found:
                    found.add(T)
                    gens_of[T] = gens_of[S] + [g]
                    nxt.append(T)
        layer = nxt
    subs = sorted(found, key=lambda s: (len(s), s))
    refs = tuple(SubgroupRef(G, s) for s in subs)
    normal = tuple(G.is_normal(s) for s in subs)
    index = {s: i for i, s in enumerate(subs)}
    seen = [False] * len(subs)
    classes = []
    for i, s in enumerate(subs):
        if seen[i]:
            continue
        cls = sorted({index[G.conjugate_set(g, s)] for g in range(G.order)})
        for j in cls:
            seen[j] = True
        classes.append(tuple(cls))
    return SubgroupLattice(G, refs, normal, tuple(classes))


def normal_subgroups(G: GroupTable) -> list[SubgroupRef]:
    return subgroup_lattice(G).normal_subgroups()


@dataclass(frozen=True, eq=False)
class Section:
    """A section P/K of a group: K normal in P."""

    P: SubgroupRef
    K: SubgroupRef
    quotient: GroupTable
    proj: dict          # element of P -> index in quotient


@lru_cache(maxsize=256)
def sections(G: GroupTable) -> tuple[Section, ...]:
    lat = subgroup_lattice(G)
    out = []
    for P in lat.subgroups:
        for K in lat.subgroups:
            if K.order > P.order or P.order % K.order or not K <= P:
                continue
            if not P.normalizes(K):
                continue
            Q, proj = section_map(G, P, K)
            out.append(Section(P, K, Q, proj))
    return tuple(out)


@lru_cache(maxsize=256)
def product_subgroups(G: GroupTable, H: GroupTable) -> tuple[tuple[int, ...], ...]:
    """Every subgroup of G x H (as sorted product indices), via Goursat's lemma:
    subgroups correspond to (P/K, Q/L, eta: Q/L -> P/K) with eta an isomorphism."""
    nh = H.order
    sg, sh = sections(G), sections(H)
    out: list[tuple[int, ...]] = []
    iso_cache: dict = {}
    for a in sg:
        for b in sh:
            if a.quotient.order != b.quotient.order:
                continue
            key = (a.quotient, b.quotient)
            if key not in iso_cache:
                iso_cache[key] = all_isomorphisms(b.quotient, a.quotient)
            isos = iso_cache[key]
            if not isos:
                continue
            fib_a: dict[int, list[int]] = {}
            for p in a.P.elems:
                fib_a.setdefault(a.proj[p], []).append(p)
            for eta in isos:
                U = sorted(p * nh + q for q in b.P.elems for p in fib_a[eta.img[b.proj[q]]])
                out.append(tuple(U))
    out.sort(key=lambda s: (len(s), s))
    return tuple(out)


def product_group(G: GroupTable, H: GroupTable) -> GroupTable:
    return direct_product(G, H)


def is_isomorphic(G: GroupTable, H: GroupTable) -> bool:
    return isomorphic(G, H) is not None
