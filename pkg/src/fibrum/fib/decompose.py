from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConsistencyError, PreconditionError
from ..grp import GroupHom, GroupTable, SubgroupRef, derived_elems, quotient_group, section_map, subgroup_table
from .element import FiberedElement, product_many
from .pairs import FiberPair, canonicalize, make_pair
from .ring import ZZ, Ring


# -- elementary bisets --------------------------------------------------------


def ind(G: GroupTable, H: SubgroupRef, N: int) -> FiberPair:
    """Ind_H^G = [G x H / Delta(H), 1]; the second group is H as its own table."""
    T, inc = subgroup_table(H)
    return make_pair(G, T, N, [(inc.img[x], x) for x in range(T.order)], check=False)


def res(G: GroupTable, H: SubgroupRef, N: int) -> FiberPair:
    T, inc = subgroup_table(H)
    return make_pair(T, G, N, [(x, inc.img[x]) for x in range(T.order)], check=False)


def inf(G: GroupTable, Nsub: SubgroupRef, N: int) -> FiberPair:
    """Inf_{G/M}^G = [G x G/M / {(g, gM)}, 1]."""
    Q, pi = quotient_group(G, Nsub)
    return make_pair(G, Q, N, [(g, pi.img[g]) for g in range(G.order)], check=False)


def deflation(G: GroupTable, Nsub: SubgroupRef, N: int) -> FiberPair:
    Q, pi = quotient_group(G, Nsub)
    return make_pair(Q, G, N, [(pi.img[g], g) for g in range(G.order)], check=False)


def iso(f: GroupHom, N: int) -> FiberPair:
    """[G x H / Delta_f(G), 1] = {(g, f(g))} for an isomorphism f: G -> H."""
    if not f.is_bijective():
        raise PreconditionError("iso needs a bijective homomorphism")
    return make_pair(f.dom, f.cod, N, [(g, f.img[g]) for g in range(f.dom.order)], check=False)


def elementary(kind: str, G: GroupTable, data, N: int) -> FiberPair:
    if kind in ("ind", "res", "inf", "def"):
        if not isinstance(data, SubgroupRef) or data.parent != G:
            raise PreconditionError(f"{kind} needs a subgroup of G")
        if kind in ("inf", "def") and not data.is_normal():
            raise PreconditionError(f"{kind} needs a normal subgroup")
        return {"ind": ind, "res": res, "inf": inf, "def": deflation}[kind](G, data, N)
    if kind == "iso":
        return iso(data, N)
    raise PreconditionError(f"unknown elementary biset {kind!r}")


# -- invariants ----------------------------------------------------------------


@dataclass(frozen=True)
class PairInvariants:
    l: tuple
    r: tuple
    K_hat: tuple[int, ...]
    K_tilde: tuple[int, ...]
    L_hat: tuple[int, ...]
    L_tilde: tuple[int, ...]
    PK: GroupTable          # P/K
    QL: GroupTable          # Q/L
    eta: GroupHom           # Q/L -> P/K
    zeta: GroupHom          # L~/L^ -> K~/K^


def _kernel(k: tuple[int, ...], chi: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(x for x, v in zip(k, chi) if v == 0)


def _tilde(G: GroupTable, P: tuple[int, ...], K: tuple[int, ...], Khat: tuple[int, ...]) -> tuple[int, ...]:
    """K~ = K^ P' & K"""
    D = derived_elems(G, P)
    KP = G.closure(D, start=Khat)
    return tuple(sorted(set(KP) & set(K)))


def pair_invariants(p: FiberPair) -> PairInvariants:
    G, H = p.g, p.h
    P, K, kappa = p.l
    Q, L, lam = p.r
    Khat, Lhat = _kernel(K, kappa), _kernel(L, lam)
    Kt, Lt = _tilde(G, P, K, Khat), _tilde(H, Q, L, Lhat)
    PK, piP = section_map(G, SubgroupRef(G, P), SubgroupRef(G, K))
    QL, piQ = section_map(H, SubgroupRef(H, Q), SubgroupRef(H, L))
    eta = [-1] * QL.order
    for a, b in p.pairs:
        c, d = piQ[b], piP[a]
        if eta[c] < 0:
            eta[c] = d
        elif eta[c] != d:
            raise ConsistencyError("eta is not well defined")
    eta_h = GroupHom(QL, PK, tuple(eta)).check()
    if not eta_h.is_bijective():
        raise ConsistencyError("eta is not bijective")
    # zeta: L~/L^ -> K~/K^ with kappa(zeta(l)) = lambda(l)
    KtKh, piK = section_map(G, SubgroupRef(G, Kt), SubgroupRef(G, Khat))
    LtLh, piL = section_map(H, SubgroupRef(H, Lt), SubgroupRef(H, Lhat))
    kmap = dict(zip(K, kappa))
    lmap = dict(zip(L, lam))
    by_value = {}
    for k in Kt:
        by_value.setdefault(kmap[k], set()).add(piK[k])
    zeta = [-1] * LtLh.order
    for l in Lt:
        targets = by_value.get(lmap[l], set())
        if len(targets) != 1:
            raise ConsistencyError("zeta is not defined")
        (t,) = targets
        if zeta[piL[l]] not in (-1, t):
            raise ConsistencyError("zeta is not well defined")
        zeta[piL[l]] = t
    zeta_h = GroupHom(LtLh, KtKh, tuple(zeta)).check()
    if not zeta_h.is_bijective():
        raise ConsistencyError("zeta is not bijective")
    return PairInvariants(p.l, p.r, Khat, Kt, Lhat, Lt, PK, QL, eta_h, zeta_h)


# -- five-factor decomposition ----------------------------------------------


@dataclass(frozen=True)
class Decomposition5:
    ind: FiberPair    # over (G, P)
    inf: FiberPair    # over (P, P/K^)
    middle: FiberPair  # over (P/K^, Q/L^)
    defl: FiberPair   # over (Q/L^, Q)
    res: FiberPair    # over (Q, H)

    def factors(self) -> list[FiberPair]:
        return [self.ind, self.inf, self.middle, self.defl, self.res]

    def product(self, ring: Ring = ZZ) -> FiberedElement:
        return product_many(*(FiberedElement.basis(f, ring) for f in self.factors()))


def decompose_standard(p: FiberPair) -> Decomposition5:
    G, H, N = p.g, p.h, p.N
    P, K, kappa = p.l
    Q, L, lam = p.r
    Khat, Lhat = _kernel(K, kappa), _kernel(L, lam)
    TP, incP = subgroup_table(SubgroupRef(G, P))
    TQ, incQ = subgroup_table(SubgroupRef(H, Q))
    posP = {x: i for i, x in enumerate(incP.img)}
    posQ = {x: i for i, x in enumerate(incQ.img)}
    PK, piP = quotient_group(TP, SubgroupRef(TP, tuple(sorted(posP[k] for k in Khat))))
    QL, piQ = quotient_group(TQ, SubgroupRef(TQ, tuple(sorted(posQ[l] for l in Lhat))))

    f_ind = make_pair(G, TP, N, [(incP.img[x], x) for x in range(TP.order)], check=False)
    f_inf = make_pair(TP, PK, N, [(x, piP.img[x]) for x in range(TP.order)], check=False)
    mid: dict[int, int] = {}
    nq = QL.order
    for (a, b), v in zip(p.pairs, p.phi):
        z = piP.img[posP[a]] * nq + piQ.img[posQ[b]]
        if mid.setdefault(z, v) != v:
            raise ConsistencyError("phi does not factor through U/(K^ x L^)")
    zs = sorted(mid)
    middle = FiberPair(PK, QL, N, tuple(zs), tuple(mid[z] for z in zs))
    f_def = make_pair(QL, TQ, N, [(piQ.img[y], y) for y in range(TQ.order)], check=False)
    f_res = make_pair(TQ, H, N, [(y, incQ.img[y]) for y in range(TQ.order)], check=False)

    if not middle.is_covering:
        raise ConsistencyError("middle factor is not covering")
    if not (_faithful(middle.phi1) and _faithful(middle.phi2)):
        raise ConsistencyError("middle factor characters are not faithful")
    return Decomposition5(f_ind, f_inf, middle, f_def, f_res)


def _faithful(chi: tuple[int, ...]) -> bool:
    return sum(1 for v in chi if v == 0) == 1


def reassemble(d: Decomposition5) -> FiberedElement:
    return d.product()


def is_canonical(p: FiberPair) -> bool:
    return canonicalize(p) == p
