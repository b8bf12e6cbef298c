from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Iterator, Sequence

from ..errors import ResourceError
from .abelian import abelian_structure
from .quotient import quotient_group, subgroup_table
from .table import AHom, GroupHom, GroupTable, SubgroupRef

AUT_BOUND = 64


def center(G: GroupTable) -> SubgroupRef:
    mul = G.mul
    gens = G.generators
    return SubgroupRef(G, tuple(z for z in range(G.order) if all(mul[z][g] == mul[g][z] for g in gens)))


def derived_elems(G: GroupTable, elems: Sequence[int]) -> tuple[int, ...]:
    """Commutator subgroup of the subgroup ``elems`` of ``G``."""
    comms = {G.commutator(a, b) for a in elems for b in elems}
    return G.closure(comms)


def derived_subgroup(G: GroupTable) -> SubgroupRef:
    return SubgroupRef(G, derived_elems(G, range(G.order)))


@dataclass(frozen=True)
class CharacteristicData:
    center: SubgroupRef
    derived: SubgroupRef
    abelianization: GroupTable
    projection: GroupHom


def characteristic_data(G: GroupTable) -> CharacteristicData:
    D = derived_subgroup(G)
    Q, pi = quotient_group(G, D)
    return CharacteristicData(center(G), D, Q, pi)


@lru_cache(maxsize=8192)
def homs_to_cyclic(H: SubgroupRef, N: int) -> tuple[AHom, ...]:
    """All homomorphisms H -> Z/N, sorted by value vector.

    Computed through the abelianization H/H' = prod Z/d_i: a hom is a choice of
    images v_i with d_i v_i = 0 mod N.
    """
    T, inc = subgroup_table(H)
    D = SubgroupRef(T, derived_elems(T, range(T.order)))
    Q, pi = quotient_group(T, D)
    st = abelian_structure(Q, range(Q.order))
    choices = [range(0, N, N // gcd(d, N)) for d in st.fa.factors]
    coords = [st.to_vec[pi.img[i]] for i in range(T.order)]
    out = []
    for v in product(*choices):
        vals = tuple(sum(c * x for c, x in zip(cv, v)) % N for cv in coords)
        out.append(AHom(H, N, vals))
    out.sort(key=lambda a: a.vals)
    return tuple(out)


def hom_count_formula(H: SubgroupRef, N: int) -> int:
    T, _ = subgroup_table(H)
    D = SubgroupRef(T, derived_elems(T, range(T.order)))
    Q, _ = quotient_group(T, D)
    out = 1
    for d in abelian_structure(Q, range(Q.order)).fa.factors:
        out *= gcd(d, N)
    return out


def extend_hom(G: GroupTable, H: GroupTable, gens: Sequence[int], imgs: Sequence[int]) -> tuple[int, ...] | None:
    """The homomorphism G -> H sending gens to imgs, or None if there is none."""
    img = [-1] * G.order
    img[0] = 0
    gm, hm = G.mul, H.mul
    frontier = [0]
    while frontier:
        new = []
        for x in frontier:
            for s, t in zip(gens, imgs):
                y = gm[x][s]
                v = hm[img[x]][t]
                if img[y] < 0:
                    img[y] = v
                    new.append(y)
                elif img[y] != v:
                    return None
        frontier = new
    if -1 in img:
        return None
    return tuple(img)


def iter_isomorphisms(G: GroupTable, H: GroupTable) -> Iterator[tuple[int, ...]]:
    if G.order != H.order:
        return
    gens = G.generators
    go, ho = G.element_orders, H.element_orders
    cands = [[y for y in range(H.order) if ho[y] == go[g]] for g in gens]
    for imgs in product(*cands):
        img = extend_hom(G, H, gens, imgs)
        if img is not None and len(set(img)) == H.order:
            yield img


def _invariants(G: GroupTable):
    return (
        G.order,
        tuple(sorted(G.element_orders)),
        center(G).order,
        derived_subgroup(G).order,
        len(G.conjugacy_classes),
    )


@lru_cache(maxsize=4096)
def isomorphic(G: GroupTable, H: GroupTable) -> GroupHom | None:
    """An explicit isomorphism G -> H, or None."""
    if G == H:
        return GroupHom.identity(G)
    if _invariants(G) != _invariants(H):
        return None
    for img in iter_isomorphisms(G, H):
        return GroupHom(G, H, img)
    return None


@dataclass(frozen=True)
class AutomorphismData:
    group: GroupTable               # Aut(G); element i is the map maps[i]
    maps: tuple[GroupHom, ...]
    inn: SubgroupRef
    out_transversal: tuple[int, ...]

    def index_of(self, img: Sequence[int]) -> int:
        return self._index[tuple(img)]

    @cached_property
    def _index(self) -> dict:
        return {m.img: i for i, m in enumerate(self.maps)}


@lru_cache(maxsize=1024)
def automorphism_group(G: GroupTable, bound: int = AUT_BOUND) -> AutomorphismData:
    if G.order > bound:
        raise ResourceError(f"automorphism enumeration bounded by |G| <= {bound}")
    imgs = sorted(iter_isomorphisms(G, G))
    index = {m: i for i, m in enumerate(imgs)}
    n = G.order
    # (a o b)(x) = a(b(x))
    mul = tuple(tuple(index[tuple(a[b[x]] for x in range(n))] for b in imgs) for a in imgs)
    labels = tuple(f"aut{i}" for i in range(len(imgs)))
    A = GroupTable(mul, labels, f"Aut({G.name})")
    inner = sorted({index[tuple(G.conj(g, x) for x in range(n))] for g in range(n)})
    inn = SubgroupRef(A, tuple(inner))
    seen: set[int] = set()
    trans = []
    for a in range(A.order):
        if a in seen:
            continue
        trans.append(a)
        seen.update(mul[a][i] for i in inner)
    maps = tuple(GroupHom(G, G, m) for m in imgs)
    return AutomorphismData(A, maps, inn, tuple(trans))


def all_isomorphisms(G: GroupTable, H: GroupTable) -> list[GroupHom]:
    """All isomorphisms G -> H, as (fixed iso) o Aut(G), sorted by image."""
    eta0 = isomorphic(G, H)
    if eta0 is None:
        return []
    aut = automorphism_group(G)
    out = sorted({tuple(eta0.img[a.img[x]] for x in range(G.order)) for a in aut.maps})
    return [GroupHom(G, H, img) for img in out]
