from __future__ import annotations

from dataclasses import dataclass

from ..errors import PreconditionError
from .abelian import AbelianStructure, CocycleTable, FinAb, abelian_structure
from .homs import center
from .quotient import quotient_group
from .table import GroupHom, GroupTable, SubgroupRef


@dataclass(frozen=True)
class SectionCocycle:
    quotient: GroupTable
    proj: GroupHom
    section: tuple[int, ...]               # quotient element -> minimal coset representative
    alpha_elems: tuple[tuple[int, ...], ...]  # alpha(x, y) as elements of K inside G
    structure: AbelianStructure            # K <-> FinAb
    alpha: CocycleTable


def section_with_cocycle(G: GroupTable, K: SubgroupRef) -> SectionCocycle:
    """sigma(x) sigma(y) = alpha(x, y) sigma(xy) with sigma the minimal-index section."""
    if not K <= center(G):
        raise PreconditionError("K must be central")
    Q, pi = quotient_group(G, K)
    sigma = [-1] * Q.order
    for g in range(G.order):
        if sigma[pi.img[g]] < 0:
            sigma[pi.img[g]] = g
    inv = G.inv
    n = Q.order
    a_el = tuple(
        tuple(G.m(sigma[x], sigma[y], inv[sigma[Q.mul[x][y]]]) for y in range(n)) for x in range(n)
    )
    st = abelian_structure(G, K.elems)
    alpha = CocycleTable(Q, st.fa, tuple(tuple(st.to_vec[a] for a in row) for row in a_el))
    return SectionCocycle(Q, pi, tuple(sigma), a_el, st, alpha)


def central_extension(beta: CocycleTable, name: str = "") -> GroupTable:
    """The group b x Q with (k1,s1)(k2,s2) = (beta(s1,s2)+k1+k2, s1 s2).

    Element (k, s) sits at index s*|b| + idx(k). For a normalized cocycle the
    identity (0, 1) is index 0; otherwise indices are rotated so that it is.
    """
    Q, b = beta.q, beta.b
    els = [(k, s) for s in range(Q.order) for k in b.elements()]
    ident = (b.neg(beta(0, 0)), 0)
    order = [ident] + [e for e in els if e != ident]
    pos = {e: i for i, e in enumerate(order)}

    def op(u, v):
        (k1, s1), (k2, s2) = u, v
        return (b.add(b.add(beta(s1, s2), k1), k2), Q.mul[s1][s2])

    mul = tuple(tuple(pos[op(u, v)] for v in order) for u in order)
    labels = tuple(f"({','.join(map(str, k))};{Q.labels[s]})" for k, s in order)
    return GroupTable(mul, labels, name)


def extension_coordinates(beta: CocycleTable) -> list[tuple]:
    """Element list (k, s) of ``central_extension(beta)`` in index order."""
    Q, b = beta.q, beta.b
    ident = (b.neg(beta(0, 0)), 0)
    els = [(k, s) for s in range(Q.order) for k in b.elements()]
    return [ident] + [e for e in els if e != ident]


def cyclic_coefficients(n: int) -> FinAb:
    return FinAb.cyclic(n)
