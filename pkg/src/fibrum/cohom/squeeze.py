"""Squeezing a faithful central pair onto K & G', the insertion/deletion bisets,
and the seven-factor decomposition of a basis element."""
from __future__ import annotations

from dataclasses import dataclass

from ..errors import ConsistencyError, PreconditionError
from ..fib import (
    FiberedElement,
    FiberPair,
    canonicalize,
    decompose_standard,
    make_pair,
    opposite,
    product_many,
)
from ..grp import (
    AHom,
    CocycleTable,
    FinAb,
    GroupTable,
    SubgroupRef,
    center,
    central_extension,
    derived_elems,
    derived_subgroup,
    direct_product,
    extension_coordinates,
    homs_to_cyclic,
    quotient_group,
)
from ..idem import CentralPair, left_central, right_central
from .h2 import h2_group, inflate, subgroup_closure, symmetric_cocycle_basis


def _require_hypothesis(G: GroupTable, N: int) -> None:
    if N % G.order:
        raise PreconditionError(f"hypothesis mode needs |G| = {G.order} to divide N = {N}")


def reduced_criterion_hypothesis(cp: CentralPair) -> bool:
    """K cyclic, K <= Z(G) & G', kappa faithful (valid when |G| divides N)."""
    G = cp.g
    _require_hypothesis(G, cp.N)
    K = set(cp.k)
    cyclic = any(G.element_orders[x] == len(K) for x in K)
    inside = K <= set(center(G).elems) and K <= set(derived_subgroup(G).elems)
    return cyclic and inside and cp.is_faithful


@dataclass(frozen=True, eq=False)
class SqueezeResult:
    cp: CentralPair
    gt: GroupTable                      # G~ = central extension of G/K by K~
    coords: tuple[tuple, ...]           # element (k~, s) of G~ at each index
    k_tilde: tuple[int, ...]            # K & G' inside G
    k_tilde_gt: tuple[int, ...]         # the same group inside G~
    cp_tilde: CentralPair               # (K~, kappa|K~) on G~
    m: SubgroupRef                      # M <= G x G~
    mu: AHom
    section: tuple[int, ...]            # G/K -> G, minimal coset representatives
    beta: CocycleTable                  # G/K x G/K -> Z/|K~|
    gamma: CocycleTable                 # symmetric, on (G/K)^ab, values in Z/|K|
    ins: FiberPair                      # (M, mu) over (G, G~)

    @property
    def delete(self) -> FiberPair:
        return opposite(self.ins)

    def to_json(self) -> dict:
        from ..grp import to_cayley

        return {
            "schema": "fibrum/squeeze/v1",
            "N": self.cp.N,
            "k": list(self.cp.k),
            "kappa": list(self.cp.kappa),
            "k_tilde": list(self.k_tilde),
            "g_tilde": to_cayley(self.gt),
            "g_tilde_order": self.gt.order,
            "k_tilde_in_g_tilde": list(self.k_tilde_gt),
            "m": list(self.m.elems),
            "mu": list(self.mu.vals),
            "choices": {
                "section": list(self.section),
                "beta": self.beta.as_lists(),
                "gamma": self.gamma.as_lists(),
            },
        }


def _normalized(c: CocycleTable) -> CocycleTable:
    """Subtract the constant coboundary so that the value at (1,1) is 0."""
    b, c0 = c.b, c(0, 0)
    return CocycleTable.from_function(c.q, b, lambda x, y: b.sub(c(x, y), c0))


def _combine(gens, coeffs, zero: CocycleTable) -> CocycleTable:
    out = zero
    for g, c in zip(gens, coeffs):
        for _ in range(c):
            out = out + g
    return out


def squeeze(cp: CentralPair) -> SqueezeResult:
    G, N = cp.g, cp.N
    _require_hypothesis(G, N)
    if not set(cp.k) <= set(center(G).elems):
        raise PreconditionError("squeeze needs K central")
    if not cp.is_faithful:
        raise PreconditionError("squeeze needs a faithful kappa")
    m = len(cp.k)
    kap = cp.table
    Ksub = SubgroupRef(G, cp.k)
    Q, proj = quotient_group(G, Ksub)
    sigma = [-1] * Q.order
    for g in range(G.order):
        if sigma[proj.img[g]] < 0:
            sigma[proj.img[g]] = g
    inv = G.inv

    def c(k: int) -> int:  # K -> Z/m through kappa
        return kap[k] * m // N % m

    bK = FinAb.cyclic(m)
    alpha = CocycleTable.from_function(
        Q, bK, lambda x, y: (c(G.m(sigma[x], sigma[y], inv[sigma[Q.mul[x][y]]])),)
    )
    Dg = set(derived_elems(G, range(G.order)))
    k_tilde = tuple(k for k in cp.k if k in Dg)
    mt = len(k_tilde)
    bT = FinAb.cyclic(mt)

    # [alpha] = iota_1[gamma] + eps_2[beta] in H^2(G/K, Z/m)
    H = h2_group(Q, bK)
    a_vec = H.classify(alpha)
    HT = h2_group(Q, bT)
    beta_gens = [HT.representative(HT._unit(j)) for j in range(len(HT.invariants))]
    scale = m // mt

    def eps(v):
        return tuple(x * scale % m for x in v) if m > 1 else ()

    eps_vecs = [H.classify(bg.map_coefficients(bK, eps)) for bg in beta_gens]
    Qab, nu = quotient_group(Q, derived_subgroup(Q))
    gamma_gens = symmetric_cocycle_basis(Qab, bK)
    iota_vecs = [H.classify(inflate(g, nu)) for g in gamma_gens]
    S_eps = subgroup_closure(H, eps_vecs)
    S_iota = subgroup_closure(H, iota_vecs)
    choice = None
    for v in sorted(S_eps):
        rest = H.sub(a_vec, v)
        if rest in S_iota:
            choice = (S_eps[v], S_iota[rest])
            break
    if choice is None:
        raise ConsistencyError("no decomposition of [alpha] into symmetric and K~-valued parts")
    beta = _normalized(_combine(beta_gens, choice[0], CocycleTable.zero(Q, bT)))
    gamma = _normalized(_combine(gamma_gens, choice[1], CocycleTable.zero(Qab, bK)))

    gt = central_extension(beta, f"{G.name}~" if G.name else "")
    coords = tuple(extension_coordinates(beta))
    pos = {e: i for i, e in enumerate(coords)}
    if pos[(bT.zero, 0)] != 0:
        raise ConsistencyError("normalized extension does not start at its identity")

    def ct(k: int) -> tuple:  # K~ -> Z/mt through kappa
        return bT.reduce((kap[k] * mt // N,))

    nt = gt.order
    u = sorted(g * nt + pos[(v, proj.img[g])] for g in range(G.order) for v in bT.elements())
    P = direct_product(G, gt)
    Msub = SubgroupRef(P, tuple(u))
    if not P.is_subgroup(Msub.elems):
        raise ConsistencyError("M is not a subgroup")
    k_idx = [k * nt for k in cp.k]
    mu = next(
        (h for h in homs_to_cyclic(Msub, N) if all(h(x) == kap[k] for x, k in zip(k_idx, cp.k))),
        None,
    )
    if mu is None:
        raise ConsistencyError("kappa x 1 does not extend to M")
    ins = make_pair(G, gt, N, Msub.elems, mu.vals)
    k_tilde_gt = tuple(sorted(pos[(ct(k), 0)] for k in k_tilde))
    kt_vals = {pos[(ct(k), 0)]: kap[k] for k in k_tilde}
    cp_tilde = CentralPair(gt, k_tilde_gt, tuple(kt_vals[x] for x in k_tilde_gt), N)
    res = SqueezeResult(cp, gt, coords, k_tilde, k_tilde_gt, cp_tilde, Msub, mu, tuple(sigma), beta, gamma, ins)
    _check_squeeze(res)
    return res


def _check_squeeze(r: SqueezeResult) -> None:
    G, gt, ins = r.cp.g, r.gt, r.ins
    fails = []
    kt = set(r.k_tilde_gt)
    if not (kt <= set(center(gt).elems) and kt <= set(derived_subgroup(gt).elems)):
        fails.append("K~ is not inside Z(G~) & G~'")
    if len(ins.p1) != G.order:
        fails.append("p1(M) != G")
    if ins.l0 != (r.cp.k, r.cp.kappa):
        fails.append("(k1, mu1) != (K, kappa)")
    if len(ins.p2) != gt.order:
        fails.append("p2(M) != G~")
    if ins.r0 != (r.cp_tilde.k, r.cp_tilde.kappa):
        fails.append("(k2, mu2) != (K~, kappa|K~)")
    nt = gt.order
    by_val = {r.cp.table[k]: k for k in r.k_tilde}
    for x, v in zip(r.cp_tilde.k, r.cp_tilde.kappa):
        if r.mu(by_val[v] * nt + x) != 0:
            fails.append("mu is not trivial on Delta(K~)")
            break
    if fails:
        raise ConsistencyError("squeeze postconditions failed: " + "; ".join(fails))


def ins_del(cp: CentralPair) -> tuple[FiberPair, FiberPair]:
    r = squeeze(cp)
    return r.ins, r.delete


# -- decompositions -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Reduction:
    ins: FiberPair      # over (G, G~)
    y: FiberPair        # over (G~, H~)
    delete: FiberPair   # over (H~, H)
    left: SqueezeResult
    right: SqueezeResult


def _single_term(x: FiberedElement, what: str) -> FiberPair:
    terms = list(x)
    if len(terms) != 1 or terms[0][1] != 1:
        raise ConsistencyError(f"{what} is not a single basis element")
    return terms[0][0]


def reduce_decomposition(p: FiberPair) -> Reduction:
    G, H, N = p.g, p.h, p.N
    _require_hypothesis(G, N)
    _require_hypothesis(H, N)
    if not p.is_covering:
        raise PreconditionError("reduce_decomposition needs a covering pair")
    lc, rc = left_central(p), right_central(p)
    if not (lc.is_faithful and rc.is_faithful):
        raise PreconditionError("reduce_decomposition needs faithful phi_1 and phi_2")
    sg, sh = squeeze(lc), squeeze(rc)
    ins_g, del_g = sg.ins, sg.delete
    ins_h, del_h = sh.ins, sh.delete
    y_el = product_many(*(FiberedElement.basis(f) for f in (del_g, p, ins_h)))
    y = _single_term(y_el, "Del p Ins")
    if y.l0 != (sg.cp_tilde.k, sg.cp_tilde.kappa) or y.r0 != (sh.cp_tilde.k, sh.cp_tilde.kappa):
        raise ConsistencyError("reduced middle factor has the wrong end pairs")
    back = product_many(*(FiberedElement.basis(f) for f in (ins_g, y, del_h)))
    if back != FiberedElement.basis(canonicalize(p)):
        raise ConsistencyError("Ins Y Del does not reproduce the input")
    return Reduction(ins_g, y, del_h, sg, sh)


@dataclass(frozen=True, eq=False)
class FullDecomposition:
    factors: tuple[FiberPair, ...]   # ind, inf, ins, middle, del, def, res
    reduction: Reduction

    NAMES = ("ind", "inf", "ins", "middle", "del", "def", "res")

    def product(self) -> FiberedElement:
        return product_many(*(FiberedElement.basis(f) for f in self.factors))


def full_decomposition(p: FiberPair) -> FullDecomposition:
    _require_hypothesis(p.g, p.N)
    _require_hypothesis(p.h, p.N)
    d = decompose_standard(p)
    r = reduce_decomposition(d.middle)
    out = FullDecomposition((d.ind, d.inf, r.ins, r.y, r.delete, d.defl, d.res), r)
    y = r.y
    if not (reduced_criterion_hypothesis(left_central(y)) and reduced_criterion_hypothesis(right_central(y))):
        raise ConsistencyError("middle factor is not reduced on both sides")
    if out.product() != FiberedElement.basis(canonicalize(p)):
        raise ConsistencyError("seven factors do not reproduce the input")
    return out
