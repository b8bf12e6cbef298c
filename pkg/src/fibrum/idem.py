"""Idempotents of the endomorphism ring, linkage, the covering algebra and the groups Gamma."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property, lru_cache

from .errors import ConsistencyError, PreconditionError
from .fib.element import FiberedElement, mackey_pairs, mackey_product
from .fib.pairs import FiberPair, canonicalize, covering_filter, opposite, standard_basis
from .fib.ring import ZZ, Ring
from .grp import (
    GroupHom,
    GroupTable,
    SubgroupRef,
    automorphism_group,
    homs_to_cyclic,
    normal_subgroups,
    quotient_group,
)
from .linalg import rank_q
from .util import UnionFind


@dataclass(frozen=True)
class CentralPair:
    """(K, kappa) with K normal in G and kappa a G-stable character of K."""

    g: GroupTable
    k: tuple[int, ...]
    kappa: tuple[int, ...]
    N: int

    @property
    def key(self) -> tuple:
        return (len(self.k), self.k, self.kappa)

    @cached_property
    def table(self) -> dict[int, int]:
        return dict(zip(self.k, self.kappa))

    def __le__(self, other: "CentralPair") -> bool:
        t = other.table
        return all(x in t and t[x] == v for x, v in zip(self.k, self.kappa))

    def __lt__(self, other: "CentralPair") -> bool:
        return self != other and self <= other

    @property
    def is_faithful(self) -> bool:
        return sum(1 for v in self.kappa if v == 0) == 1

    @property
    def kernel(self) -> tuple[int, ...]:
        return tuple(x for x, v in zip(self.k, self.kappa) if v == 0)

    def subgroup(self) -> SubgroupRef:
        return SubgroupRef(self.g, self.k)

    def label(self) -> str:
        G = self.g
        ks = ",".join(G.labels[x] for x in self.k)
        return f"({{{ks}}}; {list(self.kappa)})"

    def to_json(self) -> dict:
        return {"k": list(self.k), "kappa": list(self.kappa), "N": self.N}


def central_pair(G: GroupTable, K, kappa, N: int) -> CentralPair:
    k = tuple(sorted(K.elems if isinstance(K, SubgroupRef) else K))
    vals = dict(zip(K.elems if isinstance(K, SubgroupRef) else K, kappa))
    cp = CentralPair(G, k, tuple(vals[x] % N for x in k), N)
    if not G.is_subgroup(k) or not G.is_normal(k):
        raise PreconditionError("K must be a normal subgroup")
    mul, t = G.mul, cp.table
    for x in k:
        for y in k:
            if t[mul[x][y]] != (t[x] + t[y]) % N:
                raise PreconditionError("kappa is not a homomorphism")
    if any(t[G.conj(g, x)] != t[x] for g in G.generators for x in k):
        raise PreconditionError("kappa is not G-stable")
    return cp


@lru_cache(maxsize=256)
def mgg_pairs(G: GroupTable, N: int) -> tuple[CentralPair, ...]:
    out = []
    for K in normal_subgroups(G):
        for chi in homs_to_cyclic(K, N):
            if chi.is_stable():
                out.append(CentralPair(G, K.elems, chi.vals, N))
    out.sort(key=lambda c: c.key)
    return tuple(out)


@lru_cache(maxsize=256)
def _normal_mobius(G: GroupTable) -> dict[tuple[tuple[int, ...], tuple[int, ...]], int]:
    subs = [K.elems for K in normal_subgroups(G)]
    subs.sort(key=lambda s: (len(s), s))
    sets = {s: frozenset(s) for s in subs}
    mu: dict = {}
    for K in subs:
        mu[(K, K)] = 1
        above = [L for L in subs if len(L) > len(K) and sets[K] <= sets[L]]
        for L in above:  # increasing order, so intermediate values are ready
            mu[(K, L)] = -sum(
                mu[(K, M)] for M in subs if (K, M) in mu and M != L and sets[M] <= sets[L] and sets[K] <= sets[M]
            )
    return mu


def mobius(G: GroupTable, K: tuple[int, ...], L: tuple[int, ...]) -> int:
    return _normal_mobius(G).get((tuple(K), tuple(L)), 0)


def delta_pair(cp: CentralPair, theta: dict[int, int] | None = None) -> FiberPair:
    """(Delta_K(G), phi) with phi(g1, g2) = kappa(g2^-1 g1) + theta(g2), theta a
    function on G constant on K-cosets (default 0)."""
    G, N = cp.g, cp.N
    n, mul, t = G.order, G.mul, cp.table
    items = []
    for g2 in range(n):
        for k in cp.k:
            g1 = mul[g2][k]
            v = t[k] + (theta[g2] if theta else 0)
            items.append((g1 * n + g2, v % N))
    items.sort()
    return FiberPair(G, G, N, tuple(i for i, _ in items), tuple(v for _, v in items))


def e_element(cp: CentralPair, ring: Ring = ZZ) -> FiberedElement:
    return FiberedElement.basis(delta_pair(cp), ring)


@lru_cache(maxsize=4096)
def _f_terms(cp: CentralPair) -> tuple[tuple[CentralPair, int], ...]:
    out = []
    for other in mgg_pairs(cp.g, cp.N):
        if cp <= other:
            c = mobius(cp.g, cp.k, other.k)
            if c:
                out.append((other, c))
    return tuple(out)


def f_element(cp: CentralPair, ring: Ring = ZZ) -> FiberedElement:
    acc: dict = {}
    for other, c in _f_terms(cp):
        p = canonicalize(delta_pair(other))
        acc[p] = ring.add(acc.get(p, ring.zero()), ring.coerce(c))
    return FiberedElement(cp.g, cp.g, cp.N, ring, acc)


def left_central(p: FiberPair) -> CentralPair:
    return CentralPair(p.g, p.k1, p.phi1, p.N)


def right_central(p: FiberPair) -> CentralPair:
    return CentralPair(p.h, p.k2, p.phi2, p.N)


@lru_cache(maxsize=256)
def covering_basis(G: GroupTable, N: int) -> tuple[FiberPair, ...]:
    return tuple(standard_basis(G, G, N, covering_filter(G, G)))


# -- linkage ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Linkage:
    g: GroupTable
    N: int
    pairs: tuple[CentralPair, ...]
    classes: tuple[tuple[int, ...], ...]
    class_of: tuple[int, ...]
    witness: dict = field(repr=False)   # (i, j) -> covering pair linking pairs[i] to pairs[j]

    def index(self, cp: CentralPair) -> int:
        return self.pairs.index(cp)

    def linked(self, a: CentralPair, b: CentralPair) -> bool:
        return self.class_of[self.index(a)] == self.class_of[self.index(b)]

    def class_members(self, c: int) -> tuple[CentralPair, ...]:
        return tuple(self.pairs[i] for i in self.classes[c])

    def e_class(self, c: int, ring: Ring = ZZ) -> FiberedElement:
        out = FiberedElement.zero(self.g, self.g, self.N, ring)
        for cp in self.class_members(c):
            out = out + e_element(cp, ring)
        return out

    def f_class(self, c: int, ring: Ring = ZZ) -> FiberedElement:
        out = FiberedElement.zero(self.g, self.g, self.N, ring)
        for cp in self.class_members(c):
            out = out + f_element(cp, ring)
        return out


@lru_cache(maxsize=256)
def linkage_classes(G: GroupTable, N: int) -> Linkage:
    """G-linkage on M_G^G by scanning the covering basis."""
    pairs = mgg_pairs(G, N)
    index = {(c.k, c.kappa): i for i, c in enumerate(pairs)}
    uf = UnionFind(len(pairs))
    witness: dict = {}
    for p in covering_basis(G, N):
        try:
            i = index[(p.k1, p.phi1)]
            j = index[(p.k2, p.phi2)]
        except KeyError:
            raise ConsistencyError("covering pair with invariants outside M_G^G") from None
        witness.setdefault((i, j), p)
        uf.union(i, j)
    classes = tuple(sorted(tuple(sorted(c)) for c in uf.classes()))
    class_of = [0] * len(pairs)
    for ci, c in enumerate(classes):
        for i in c:
            class_of[i] = ci
    return Linkage(G, N, pairs, classes, tuple(class_of), witness)


@lru_cache(maxsize=256)
def _covering_ends(G: GroupTable, H: GroupTable, N: int) -> frozenset:
    return frozenset((p.l0, p.r0) for p in standard_basis(G, H, N, covering_filter(G, H)))


def linked_bruteforce(a: CentralPair, b: CentralPair) -> bool:
    """Some covering pair over (G, H) has l0 = (K, kappa) and r0 = (L, lambda)."""
    if a.N != b.N:
        raise PreconditionError("moduli differ")
    return ((a.k, a.kappa), (b.k, b.kappa)) in _covering_ends(a.g, b.g, a.N)


# -- Gamma -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GammaGroup:
    base: CentralPair
    elements: tuple[FiberPair, ...]
    table: GroupTable
    inverse: tuple[int, ...]

    @property
    def order(self) -> int:
        return len(self.elements)

    @cached_property
    def _pos(self) -> dict[FiberPair, int]:
        return {p: i for i, p in enumerate(self.elements)}

    def index(self, p: FiberPair) -> int:
        return self._pos[canonicalize(p)]


def _single(p: FiberPair, q: FiberPair) -> FiberPair | None:
    terms = mackey_pairs(p, q)
    if len(terms) > 1:
        raise ConsistencyError("product of covering classes has several terms")
    return terms[0] if terms else None


@lru_cache(maxsize=1024)
def gamma_group(cp: CentralPair) -> GammaGroup:
    G, N = cp.g, cp.N
    ident = canonicalize(delta_pair(cp))
    els = [p for p in covering_basis(G, N) if (p.k1, p.phi1) == (cp.k, cp.kappa) and (p.k2, p.phi2) == (cp.k, cp.kappa)]
    els.sort(key=lambda p: (p != ident, p.key))
    if not els or els[0] != ident:
        raise ConsistencyError("e_(K,kappa) is missing from Gamma")
    pos = {p: i for i, p in enumerate(els)}
    mul = []
    for p in els:
        row = []
        for q in els:
            r = _single(p, q)
            if r is None or r not in pos:
                raise ConsistencyError("Gamma is not closed under multiplication")
            row.append(pos[r])
        mul.append(tuple(row))
    labels = tuple(f"g{i}" for i in range(len(els)))
    T = GroupTable(tuple(mul), labels, f"Gamma{cp.label()}").validate()
    inv = tuple(pos[canonicalize(opposite(p))] for p in els)
    for i, j in enumerate(inv):
        if T.mul[i][j] != 0 or T.mul[j][i] != 0:
            raise ConsistencyError("opposite is not the inverse in Gamma")
    return GammaGroup(cp, tuple(els), T, inv)


@dataclass(frozen=True, eq=False)
class GammaBimodule:
    left: CentralPair
    right: CentralPair
    elements: tuple[FiberPair, ...]
    left_action: tuple[tuple[int, ...], ...]    # [gamma][x]
    right_action: tuple[tuple[int, ...], ...]   # [x][gamma]

    @property
    def empty(self) -> bool:
        return not self.elements

    def transport(self) -> GroupHom | None:
        """Gamma_right -> Gamma_left, y -> u y u^op for the least element u."""
        if self.empty:
            return None
        u = self.elements[0]
        uop = canonicalize(opposite(u))
        GL, GR = gamma_group(self.left), gamma_group(self.right)
        img = []
        for y in GR.elements:
            a = _single(u, y)
            b = _single(a, uop) if a is not None else None
            if b is None:
                raise ConsistencyError("transport hits zero")
            img.append(GL.index(b))
        f = GroupHom(GR.table, GL.table, tuple(img)).check()
        if not f.is_bijective():
            raise ConsistencyError("transport is not an isomorphism")
        return f


@lru_cache(maxsize=1024)
def gamma_bimodule(left: CentralPair, right: CentralPair) -> GammaBimodule:
    if left.N != right.N:
        raise PreconditionError("moduli differ")
    G, H, N = left.g, right.g, left.N
    els = [
        p
        for p in standard_basis(G, H, N, covering_filter(G, H))
        if (p.k1, p.phi1) == (left.k, left.kappa) and (p.k2, p.phi2) == (right.k, right.kappa)
    ]
    els.sort(key=lambda p: p.key)
    if not els:
        return GammaBimodule(left, right, (), (), ())
    pos = {p: i for i, p in enumerate(els)}
    GL, GR = gamma_group(left), gamma_group(right)
    la = tuple(tuple(pos[_single(g, x)] for x in els) for g in GL.elements)
    ra = tuple(tuple(pos[_single(x, g)] for g in GR.elements) for x in els)
    n = len(els)
    if GL.order != n or GR.order != n:
        raise ConsistencyError("bimodule size differs from |Gamma|")
    # free and transitive: the orbit map of element 0 is a bijection
    if len({row[0] for row in la}) != n or len(set(ra[0])) != n:
        raise ConsistencyError("Gamma action is not free and transitive")
    return GammaBimodule(left, right, tuple(els), la, ra)


# -- covering algebra ----------------------------------------------------------


def _vector(x: FiberedElement, index: dict[FiberPair, int]) -> list[int]:
    v = [0] * len(index)
    for p, c in x.terms.items():
        if p not in index:
            raise ConsistencyError("element leaves the covering algebra")
        v[index[p]] = int(c)
    return v


@dataclass
class BlockData:
    members: list[CentralPair]
    gamma_order: int
    dim_expected: int
    dims_ij: list[list[int]] | None = None
    gamma_iso_checked: bool = False


@dataclass
class CoveringReport:
    g: GroupTable
    N: int
    basis_size: int
    blocks: list[BlockData]
    dimension_identity: bool
    block_checks: bool | None

    def to_json(self) -> dict:
        return {
            "group": self.g.name,
            "N": self.N,
            "dim_Ec": self.basis_size,
            "blocks": [
                {
                    "members": [m.to_json() for m in b.members],
                    "class_size": len(b.members),
                    "gamma_order": b.gamma_order,
                    "block_dim": b.dim_expected,
                    "dims_ij": b.dims_ij,
                    "f_E_f_iso_k_gamma": b.gamma_iso_checked,
                }
                for b in self.blocks
            ],
            "dimension_identity": self.dimension_identity,
            "block_checks": self.block_checks,
        }


def check_corner_isomorphism(cp: CentralPair) -> bool:
    """a -> f a f is injective and multiplicative from Z[Gamma] into f E^c f,
    sends 1 to f, and f E^c f has rank |Gamma|."""
    G, N = cp.g, cp.N
    basis = covering_basis(G, N)
    index = {p: i for i, p in enumerate(basis)}
    f = f_element(cp)
    gam = gamma_group(cp)
    imgs = []
    for p in gam.elements:
        imgs.append(mackey_product(mackey_product(f, FiberedElement.basis(p)), f))
    if imgs[0] != f:
        return False
    for i in range(gam.order):
        for j in range(gam.order):
            if mackey_product(imgs[i], imgs[j]) != imgs[gam.table.mul[i][j]]:
                return False
    if rank_q([_vector(x, index) for x in imgs]) != gam.order:
        return False
    corner = [_vector(mackey_product(mackey_product(f, FiberedElement.basis(b)), f), index) for b in basis]
    return rank_q(corner) == gam.order


def covering_algebra_report(G: GroupTable, N: int, full: bool = False) -> CoveringReport:
    """Block decomposition of E^c. With ``full`` each block also gets the ranks of
    f_i E^c f_j (all must equal |Gamma|) and the corner check for its first member."""
    basis = covering_basis(G, N)
    link = linkage_classes(G, N)
    blocks = []
    total = 0
    for ci in range(len(link.classes)):
        members = list(link.class_members(ci))
        gam = gamma_group(members[0])
        n = len(members)
        blocks.append(BlockData(members, gam.order, n * n * gam.order))
        total += n * n * gam.order
    ok = None
    if full:
        ok = True
        index = {p: i for i, p in enumerate(basis)}
        fs = {cp: f_element(cp) for cp in link.pairs}
        for b in blocks:
            dims = []
            for ci in b.members:
                left = [mackey_product(fs[ci], FiberedElement.basis(x)) for x in basis]
                row = []
                for cj in b.members:
                    vecs = [_vector(mackey_product(y, fs[cj]), index) for y in left]
                    row.append(rank_q(vecs))
                dims.append(row)
            b.dims_ij = dims
            b.gamma_iso_checked = check_corner_isomorphism(b.members[0])
            ok = ok and all(d == b.gamma_order for r in dims for d in r) and b.gamma_iso_checked
    return CoveringReport(G, N, len(basis), blocks, total == len(basis), ok)


# -- the short exact sequence ----------------------------------------------------


@dataclass
class SESReport:
    base: CentralPair
    gamma_order: int
    dual_order: int                 # |(G/K)^*|
    image_order: int                # |im pi| inside Out(G/K)
    out_order: int
    iota: list[int]                 # Gamma index of iota(theta), per theta
    kernel: list[int]               # Gamma indices with pi trivial
    pi: list[int]                   # Out index per Gamma element
    twist: list[int]                # indices of theta of the form g -> kappa([h, g])
    exact: bool                     # ker pi == im iota
    iota_injective: bool
    order_identity: bool            # |Gamma| == |(G/K)^*| |im pi|
    corrected_identity: bool        # ker iota == twist and |Gamma| == |(G/K)^*/T| |im pi|
    split: str                      # "split" | "non-split" | "undetermined"
    complement: list[int] | None

    def to_json(self) -> dict:
        d = {k: getattr(self, k) for k in self.__dataclass_fields__ if k != "base"}
        d["base"] = self.base.to_json()
        return d


def _pi_automorphism(p: FiberPair, proj: GroupHom, Q: GroupTable) -> tuple[int, ...]:
    """eta with eta(g2 K) = g1 K for (g1, g2) in U."""
    img = [-1] * Q.order
    for a, b in p.pairs:
        x, y = proj.img[b], proj.img[a]
        if img[x] < 0:
            img[x] = y
        elif img[x] != y:
            raise ConsistencyError("U is not of the form U_eta")
    return tuple(img)


def twist_characters(cp: CentralPair) -> set[tuple[int, ...]]:
    """{xK -> kappa([h, x]) : hK central in G/K}, as value vectors on G/K."""
    G = cp.g
    Q, proj = quotient_group(G, cp.subgroup())
    t = cp.table
    out = set()
    for h in range(G.order):
        vals = [None] * Q.order
        ok = True
        for x in range(G.order):
            c = G.commutator(h, x)
            if c not in t:
                ok = False
                break
            vals[proj.img[x]] = t[c]
        if ok:
            out.add(tuple(vals))
    return out


def ses_report(cp: CentralPair, split_budget: int = 200_000) -> SESReport:
    if not cp.is_faithful:
        raise PreconditionError("the exact sequence needs a faithful kappa")
    G, N = cp.g, cp.N
    gam = gamma_group(cp)
    Q, proj = quotient_group(G, cp.subgroup())
    aut = automorphism_group(Q)
    Out, out_proj = quotient_group(aut.group, aut.inn)

    pi = []
    for p in gam.elements:
        eta = _pi_automorphism(p, proj, Q)
        pi.append(out_proj.img[aut.index_of(eta)])
    pi_h = GroupHom(gam.table, Out, tuple(pi)).check()

    duals = homs_to_cyclic(SubgroupRef.whole(Q), N)
    iota = []
    for th in duals:
        theta = {g: th.vals[proj.img[g]] for g in range(G.order)}
        iota.append(gam.index(delta_pair(cp, theta)))
    where = {c.vals: i for i, c in enumerate(duals)}
    for i, a in enumerate(duals):
        for j, b in enumerate(duals):
            k = where[tuple((x + y) % N for x, y in zip(a.vals, b.vals))]
            if gam.table.mul[iota[i]][iota[j]] != iota[k]:
                raise ConsistencyError("iota is not a homomorphism")
    kernel = [i for i, o in enumerate(pi) if o == 0]
    image = sorted(set(pi))
    twist = sorted(where[v] for v in twist_characters(cp))
    ker_iota = [i for i, g in enumerate(iota) if g == 0]
    exact = sorted(set(iota)) == kernel
    order_ok = gam.order == len(duals) * len(image)
    corrected = ker_iota == twist and gam.order * len(twist) == len(duals) * len(image)

    split, comp = _complement_search(gam, pi_h, image, split_budget)
    return SESReport(
        cp, gam.order, len(duals), len(image), Out.order, iota, kernel, pi, twist,
        exact, len(set(iota)) == len(iota), order_ok, corrected, split, comp,
    )


def _complement_search(gam: GammaGroup, pi: GroupHom, image: list[int], budget: int):
    """Look for a subgroup of Gamma mapped isomorphically onto im(pi)."""
    T, Out = gam.table, pi.cod
    gens: list[int] = []
    span: tuple[int, ...] = (0,)
    for o in image:
        if o not in span:
            gens.append(o)
            span = Out.closure(gens)
    if not gens:
        return "split", [0]
    fibers = [[i for i, o in enumerate(pi.img) if o == g] for g in gens]
    total = 1
    for f in fibers:
        total *= len(f)
    if total > budget:
        return "undetermined", None
    target = len(image)

    def rec(i: int, chosen: list[int]):
        if i == len(gens):
            C = T.closure(chosen)
            return list(C) if len(C) == target else None
        for x in fibers[i]:
            r = rec(i + 1, chosen + [x])
            if r is not None:
                return r
        return None

    comp = rec(0, [])
    return ("split", comp) if comp is not None else ("non-split", None)


# -- identity checks -------------------------------------------------------------


def ef_relation_failures(G: GroupTable, N: int) -> list[str]:
    """Every violated instance of the e/f product relations (empty list when all hold)."""
    pairs = mgg_pairs(G, N)
    es = {c: e_element(c) for c in pairs}
    fs = {c: f_element(c) for c in pairs}
    zero = FiberedElement.zero(G, G, N)
    bad = []
    for a in pairs:
        for b in pairs:
            ef, fe = es[a] * fs[b], fs[b] * es[a]
            want = fs[b] if a <= b else zero
            if ef != want or fe != want:
                bad.append(f"e{a.label()} f{b.label()}")
            ff = fs[a] * fs[b]
            if ff != (fs[a] if a == b else zero):
                bad.append(f"f{a.label()} f{b.label()}")
            ee = es[a] * es[b]
            ta, tb = a.table, b.table
            agree = all(tb[x] == v for x, v in ta.items() if x in tb)
            if agree:
                kk = G.closure(a.k + b.k)
                vals = {}
                for x in a.k:
                    for y in b.k:
                        vals[G.mul[x][y]] = (ta[x] + tb[y]) % N
                prod = CentralPair(G, kk, tuple(vals[x] for x in kk), N)
                if ee != es[prod]:
                    bad.append(f"e{a.label()} e{b.label()}")
            elif not ee.is_zero():
                bad.append(f"e{a.label()} e{b.label()} nonzero")
    total = zero
    for c in pairs:
        total = total + fs[c]
    if total != FiberedElement.identity(G, N):
        bad.append("sum of f is not 1")
    return bad


def delete_f_holds(p: FiberPair) -> bool:
    """x f_r0 = f_l0 x f_r0 = f_l0 x for covering x."""
    if not p.is_covering:
        raise PreconditionError("needs a covering pair")
    x = FiberedElement.basis(p)
    fl, fr = f_element(left_central(p)), f_element(right_central(p))
    a = x * fr
    return a == fl * a and a == fl * x
