"""Linkage of central pairs decided through extension classes."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConsistencyError, PreconditionError
from ..grp import (
    CocycleTable,
    FinAb,
    GroupHom,
    GroupTable,
    SubgroupRef,
    automorphism_group,
    center,
    direct_product,
    homs_to_cyclic,
    isomorphic,
    quotient_group,
)
from ..idem import CentralPair
from .h2 import h2_group


def faithful_reduction(cp: CentralPair) -> CentralPair:
    """(G/ker kappa, K/ker kappa, kappa bar)."""
    G = cp.g
    if cp.is_faithful:
        return cp
    Q, proj = quotient_group(G, SubgroupRef(G, cp.kernel))
    vals: dict[int, int] = {}
    for k, v in zip(cp.k, cp.kappa):
        vals.setdefault(proj.img[k], v)
    ks = tuple(sorted(vals))
    return CentralPair(Q, ks, tuple(vals[x] for x in ks), cp.N)


def extension_class(cp: CentralPair) -> tuple[GroupTable, GroupHom, CocycleTable]:
    """G/K, the projection, and kappa o alpha in Z^2(G/K, Z/N) for the minimal section."""
    G, N = cp.g, cp.N
    if not cp.is_faithful or not set(cp.k) <= set(center(G).elems):
        raise PreconditionError("extension class needs a faithful central pair")
    Q, proj = quotient_group(G, SubgroupRef(G, cp.k))
    sigma = [-1] * Q.order
    for g in range(G.order):
        if sigma[proj.img[g]] < 0:
            sigma[proj.img[g]] = g
    t, inv = cp.table, G.inv
    alpha = CocycleTable.from_function(
        Q, FinAb.cyclic(N), lambda x, y: (t[G.m(sigma[x], sigma[y], inv[sigma[Q.mul[x][y]]])],)
    )
    return Q, proj, alpha


def _isomorphism_reps(src: GroupTable, dst: GroupTable) -> list[GroupHom]:
    """Isomorphisms src -> dst up to inner automorphisms of dst."""
    eta0 = isomorphic(src, dst)
    if eta0 is None:
        return []
    aut = automorphism_group(dst)
    return [
        GroupHom(src, dst, tuple(aut.maps[i].img[eta0.img[x]] for x in range(src.order)))
        for i in aut.out_transversal
    ]


@dataclass(frozen=True, eq=False)
class LinkageVerdict:
    linked: bool
    eta: GroupHom | None     # H/L -> G/K on the faithful reductions
    left: CentralPair
    right: CentralPair

    def to_json(self) -> dict:
        return {
            "schema": "fibrum/linkage/v1",
            "linked": self.linked,
            "eta": list(self.eta.img) if self.eta else None,
        }


def linkage_via_cohomology(a: CentralPair, b: CentralPair) -> LinkageVerdict:
    """Linked iff some eta: H/L -> G/K has [kappa o alpha] = [lambda o beta o (eta^-1 x eta^-1)]."""
    if a.N != b.N:
        raise PreconditionError("moduli differ")
    ar, br = faithful_reduction(a), faithful_reduction(b)
    Qa, _, alpha = extension_class(ar)
    Qb, _, beta = extension_class(br)
    H = h2_group(Qa, alpha.b)
    target = H.classify(alpha)
    for eta in _isomorphism_reps(Qb, Qa):
        inv = [0] * Qa.order
        for x, y in enumerate(eta.img):
            inv[y] = x
        if H.classify(beta.pullback(inv, Qa)) == target:
            return LinkageVerdict(True, eta, ar, br)
    return LinkageVerdict(False, None, ar, br)


def linkage_via_extension(a: CentralPair, b: CentralPair) -> bool:
    """Independent route: some kappa x lambda^-1 extends to a pullback U <= G x H."""
    if a.N != b.N:
        raise PreconditionError("moduli differ")
    ar, br = faithful_reduction(a), faithful_reduction(b)
    G, Hg, N = ar.g, br.g, ar.N
    Qa, pa = quotient_group(G, SubgroupRef(G, ar.k))
    Qb, pb = quotient_group(Hg, SubgroupRef(Hg, br.k))
    P = direct_product(G, Hg)
    nh = Hg.order
    kt, lt = ar.table, br.table
    for eta in _isomorphism_reps(Qb, Qa):
        u = tuple(sorted(g * nh + h for g in range(G.order) for h in range(nh) if eta.img[pb.img[h]] == pa.img[g]))
        U = SubgroupRef(P, u)
        if not P.is_subgroup(u):
            raise ConsistencyError("pullback is not a subgroup")
        for chi in homs_to_cyclic(U, N):
            if all(chi(k * nh + l) == (kt[k] - lt[l]) % N for k in ar.k for l in br.k):
                return True
    return False
