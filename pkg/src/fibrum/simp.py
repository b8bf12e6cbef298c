"""Reduced pairs, the essential algebra, Gamma-modules and evaluations of simple functors."""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from math import lcm
from typing import Sequence

import numpy as np

from .errors import ConsistencyError, PreconditionError, ResourceError
from .fib import FiberedElement, FiberPair, covering_filter, mackey_pairs, mackey_product, standard_basis
from .fib.ring import GF
from .grp import (
    Catalog,
    GroupTable,
    abelian_structure,
    derived_subgroup,
    isomorphic,
    quotient_group,
    sections,
    small_catalog,
)
from .grp.catalog import COMPLETE_UP_TO
from .idem import (
    CentralPair,
    GammaGroup,
    f_element,
    gamma_bimodule,
    gamma_group,
    linkage_classes,
    mgg_pairs,
)
from .linalg import QuotientReducer, SpanSolver, rank_mod_p
from .util import is_prime, least_prime_1_mod, primitive_root

BASIS_BOUND = 4000


# -- reduced pairs ---------------------------------------------------------------


@dataclass(frozen=True)
class ReducedFlag:
    cp: CentralPair
    reduced: bool
    witness: FiberPair | None       # covering pair over (G, H) with l0 = (K, kappa), |H| < |G|

    def to_json(self) -> dict:
        w = self.witness
        return {
            **self.cp.to_json(),
            "reduced": self.reduced,
            "witness": None
            if w is None
            else {"h": w.h.name, "h_order": w.h.order, "u": list(w.u), "phi": list(w.phi)},
        }


@dataclass(frozen=True)
class ReducedReport:
    g: GroupTable
    N: int
    flags: tuple[ReducedFlag, ...]
    catalog_complete: bool

    def flag(self, cp: CentralPair) -> ReducedFlag:
        for f in self.flags:
            if f.cp == cp:
                return f
        raise PreconditionError("pair not in M_G^G")

    def is_reduced(self, cp: CentralPair) -> bool:
        return self.flag(cp).reduced

    def to_json(self) -> dict:
        return {
            "schema": "fibrum/reduced/v1",
            "group": self.g.name,
            "N": self.N,
            "catalog_complete": self.catalog_complete,
            "pairs": [f.to_json() for f in self.flags],
        }


@lru_cache(maxsize=256)
def _covering_by_left(G: GroupTable, H: GroupTable, N: int) -> dict:
    out: dict = {}
    for p in sorted(standard_basis(G, H, N, covering_filter(G, H)), key=lambda p: p.key):
        out.setdefault(p.l0, p)
    return out


@lru_cache(maxsize=256)
def reduced_pairs_bruteforce(G: GroupTable, N: int, catalog: Catalog | None = None) -> ReducedReport:
    """(K, kappa) is non-reduced iff it is linked to a triple over a smaller group."""
    cat = catalog if catalog is not None else small_catalog(max(G.order - 1, 1))
    smaller = [H for H in cat if H.order < G.order]
    complete = cat.complete and G.order - 1 <= min(cat.max_order, COMPLETE_UP_TO)
    flags = []
    for cp in mgg_pairs(G, N):
        witness = None
        for H in smaller:
            witness = _covering_by_left(G, H, N).get((cp.k, cp.kappa))
            if witness is not None:
                break
        flags.append(ReducedFlag(cp, witness is None, witness))
    return ReducedReport(G, N, tuple(flags), complete)


# -- the essential algebra ---------------------------------------------------------


@dataclass
class EssentialReport:
    g: GroupTable
    N: int
    p: int
    reduced: ReducedReport
    basis: tuple[FiberPair, ...]
    in_ideal: tuple[bool, ...]
    blocks: list[dict]
    dim_ebar: int
    dim_formula: int
    ideal_closed: bool

    @property
    def ebar_basis(self) -> tuple[FiberPair, ...]:
        return tuple(b for b, i in zip(self.basis, self.in_ideal) if not i)

    def to_json(self) -> dict:
        return {
            "schema": "fibrum/essential/v1",
            "group": self.g.name,
            "N": self.N,
            "p": self.p,
            "dim_E": len(self.basis),
            "dim_I": sum(self.in_ideal),
            "dim_Ebar": self.dim_ebar,
            "dim_formula": self.dim_formula,
            "blocks": self.blocks,
            "ideal_closed": self.ideal_closed,
            "catalog_complete": self.reduced.catalog_complete,
        }


def _ideal_flags(G: GroupTable, N: int, basis: Sequence[FiberPair], red: ReducedReport) -> tuple[bool, ...]:
    reduced0 = {(f.cp.k, f.cp.kappa) for f in red.flags if f.reduced}
    return tuple(not (b.is_covering and b.l0 in reduced0) for b in basis)


@lru_cache(maxsize=64)
def essential_basis(G: GroupTable, N: int, p: int = 0, ideal_samples: int = 400, seed: int = 0) -> EssentialReport:
    """I_G spanned by non-covering pairs and covering pairs with non-reduced l0."""
    import random

    basis = tuple(sorted(standard_basis(G, G, N), key=lambda b: b.key))
    if len(basis) > BASIS_BOUND:
        raise ResourceError(f"E_G has {len(basis)} basis elements, above {BASIS_BOUND}")
    red = reduced_pairs_bruteforce(G, N)
    flags = _ideal_flags(G, N, basis, red)
    link = linkage_classes(G, N)
    blocks = []
    formula = 0
    for ci in range(len(link.classes)):
        members = link.class_members(ci)
        r = [red.is_reduced(m) for m in members]
        if any(r) != all(r):
            raise ConsistencyError("reducedness is not constant on a linkage class")
        gam = gamma_group(members[0])
        if r[0]:
            formula += len(members) ** 2 * gam.order
        blocks.append(
            {"members": [m.to_json() for m in members], "reduced": r[0], "gamma_order": gam.order, "class_size": len(members)}
        )
    # I_G is a two-sided ideal: sampled products of an ideal element with anything stay in I_G
    rng = random.Random(seed)
    idx = {b: i for i, b in enumerate(basis)}
    ideal = [b for b, f in zip(basis, flags) if f]
    closed = True
    for _ in range(ideal_samples if ideal else 0):
        a, b = rng.choice(ideal), rng.choice(basis)
        for x, y in ((a, b), (b, a)):
            if not all(flags[idx[t]] for t in mackey_pairs(x, y)):
                closed = False
    dim_ebar = sum(1 for f in flags if not f)
    return EssentialReport(G, N, p, red, basis, flags, blocks, dim_ebar, formula, closed)


# -- Gamma-modules -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GammaModule:
    """A representation of Gamma over F_p: one d x d matrix per Gamma element (column action)."""

    gamma: GammaGroup
    p: int
    mats: tuple[np.ndarray, ...]
    label: str = ""

    @property
    def dim(self) -> int:
        return int(self.mats[0].shape[0])

    def traces(self) -> tuple[int, ...]:
        return tuple(int(np.trace(m)) % self.p for m in self.mats)

    def check(self) -> "GammaModule":
        T, p = self.gamma.table, self.p
        if not np.array_equal(self.mats[0] % p, np.eye(self.dim, dtype=np.int64)):
            raise PreconditionError("identity of Gamma does not act as 1")
        for i in range(T.order):
            for j in range(T.order):
                if not np.array_equal(self.mats[i] @ self.mats[j] % p, self.mats[T.mul[i][j]] % p):
                    raise PreconditionError("matrices do not respect the Gamma table")
        return self

    def is_simple(self, max_p: int = 7, max_dim: int = 4) -> bool | None:
        """Every nonzero vector spins to the whole space; None when above the bounds."""
        d, p = self.dim, self.p
        if d == 1:
            return True
        if p > max_p or d > max_dim:
            return None
        for v in product(range(p), repeat=d):
            if not any(v):
                continue
            span = [np.array(m @ np.array(v) % p) for m in self.mats]
            if rank_mod_p(span, p) < d:
                return False
        return True

    def to_json(self) -> dict:
        return {"label": self.label, "p": self.p, "dim": self.dim, "mats": [m.tolist() for m in self.mats]}


def trivial_module(gam: GammaGroup, p: int) -> GammaModule:
    one = np.ones((1, 1), dtype=np.int64)
    return GammaModule(gam, p, tuple(one for _ in range(gam.order)), "trivial")


def gamma_irreducibles(gam: GammaGroup, p: int) -> tuple[list[GammaModule], bool]:
    """One-dimensional modules through Gamma^ab, and whether that list is complete.

    Complete when Gamma is abelian and exp(Gamma) divides p - 1.
    """
    if not is_prime(p) or gam.order % p == 0:
        raise PreconditionError("need a prime p not dividing |Gamma|")
    T = gam.table
    Q, proj = quotient_group(T, derived_subgroup(T))
    st = abelian_structure(Q, range(Q.order))
    if any((p - 1) % d for d in st.fa.factors):
        return [trivial_module(gam, p)], False
    g = primitive_root(p)
    roots = [pow(g, (p - 1) // d, p) for d in st.fa.factors]
    out = []
    for exps in product(*(range(d) for d in st.fa.factors)):
        vals = []
        for x in range(T.order):
            v = 1
            for r, a, c in zip(roots, exps, st.to_vec[proj.img[x]]):
                v = v * pow(r, a * c, p) % p
            vals.append(np.array([[v]], dtype=np.int64))
        label = "trivial" if not any(exps) else "chi" + ",".join(map(str, exps))
        out.append(GammaModule(gam, p, tuple(vals), label).check())
    return out, T.is_abelian


# -- quadruples and evaluation -----------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Quadruple:
    cp: CentralPair
    module: GammaModule

    @property
    def g(self) -> GroupTable:
        return self.cp.g

    def to_json(self) -> dict:
        return {"schema": "fibrum/quadruple/v1", "group": self.g.name, **self.cp.to_json(), "module": self.module.to_json()}


def default_prime(G: GroupTable, gam: GammaGroup, N: int) -> int:
    return least_prime_1_mod(lcm(gam.table.exponent, N, G.order), avoid=gam.order * G.order)


def quadruple(cp: CentralPair, module: GammaModule | None = None, p: int | None = None) -> Quadruple:
    red = reduced_pairs_bruteforce(cp.g, cp.N)
    if not red.is_reduced(cp):
        raise PreconditionError("(K, kappa) is not reduced")
    gam = gamma_group(cp)
    if module is None:
        module = trivial_module(gam, p or default_prime(cp.g, gam, cp.N))
    if module.gamma is not gam:
        raise PreconditionError("module belongs to another Gamma")
    module.check()
    if module.is_simple() is False:
        raise PreconditionError("module is not simple")
    return Quadruple(cp, module)


class _EbarContext:
    """Reduction of E_G modulo I_G and mod p, with products projected onto the Ebar basis."""

    def __init__(self, G: GroupTable, N: int, p: int):
        rep = essential_basis(G, N)
        self.G, self.N, self.p = G, N, p
        self.basis = rep.ebar_basis
        self.index = {b: i for i, b in enumerate(self.basis)}
        self.ring = GF(p)

    def vec(self, x: FiberedElement) -> np.ndarray:
        v = np.zeros(len(self.basis), dtype=np.int64)
        for b, c in x.terms.items():
            i = self.index.get(b)
            if i is not None:
                v[i] = (v[i] + int(c)) % self.p
        return v

    def element(self, v) -> FiberedElement:
        terms = {self.basis[i]: int(c) for i, c in enumerate(v) if c % self.p}
        return FiberedElement(self.G, self.G, self.N, self.ring, terms)

    def mul(self, x: FiberedElement, y: FiberedElement) -> FiberedElement:
        return self.element(self.vec(mackey_product(x, y)))


@lru_cache(maxsize=64)
def _ebar(G: GroupTable, N: int, p: int) -> _EbarContext:
    return _EbarContext(G, N, p)


class _Corner:
    """e = f_(K, kappa) in Ebar and the projection b -> e b e in coordinates of e Gamma e."""

    def __init__(self, cp: CentralPair, p: int):
        self.ctx = ctx = _ebar(cp.g, cp.N, p)
        self.gamma = gam = gamma_group(cp)
        self.e = ctx.element(ctx.vec(f_element(cp)))
        rows = [ctx.vec(mackey_product(mackey_product(self.e, FiberedElement.basis(g, ctx.ring)), self.e)) for g in gam.elements]
        try:
            self.solver = SpanSolver(rows, p)
        except ValueError:
            raise ConsistencyError("e Gamma e is not independent in Ebar") from None
        self._cache: dict[FiberPair, np.ndarray] = {}

    def coords(self, b: FiberPair) -> np.ndarray:
        """e b e in the basis (e gamma e); zero for b in I_G."""
        out = self._cache.get(b)
        if out is None:
            ctx = self.ctx
            if b not in ctx.index:
                out = np.zeros(self.gamma.order, dtype=np.int64)
            else:
                x = FiberedElement.basis(b, ctx.ring)
                v = ctx.vec(mackey_product(mackey_product(self.e, x), self.e))
                out = self.solver.solve(v)
                if out is None:
                    raise ConsistencyError("e b e is outside e Gamma e")
            self._cache[b] = out
        return out


@lru_cache(maxsize=64)
def _corner(cp: CentralPair, p: int) -> _Corner:
    return _Corner(cp, p)


def _faithful(chi: Sequence[int]) -> bool:
    return sum(1 for v in chi if v == 0) == 1


def _evaluation_bases(G: GroupTable, H: GroupTable, N: int):
    """y in B(G,H) and x in B(H,G) that can reach Ebar_G.

    y factors through p1(y)/ker(phi_1), so y x lies in I_G unless p1(y) = G and
    phi_1 is faithful; symmetrically for x.
    """
    ys = [
        y
        for y in sorted(standard_basis(G, H, N), key=lambda b: b.key)
        if len(y.p1) == G.order and _faithful(y.phi1)
    ]
    xs = [
        x
        for x in sorted(standard_basis(H, G, N), key=lambda b: b.key)
        if len(x.p2) == G.order and _faithful(x.phi2)
    ]
    return ys, xs


def simple_evaluation(q: Quadruple, H: GroupTable, method: str = "compressed") -> int:
    """dim S_(G,K,kappa,V)(H) as the rank of the evaluation pairing over F_p.

    ``compressed`` pairs B(G,H) against B(H,G) through e Ebar e = k Gamma acting on V.
    ``full`` materializes V~ = Ebar e (x)_{k Gamma} V and pairs into it.
    """
    if method == "full":
        return _evaluation_full(q, H)
    if method != "compressed":
        raise PreconditionError(f"unknown method {method!r}")
    cp, mod = q.cp, q.module
    p, d = mod.p, mod.dim
    corner = _corner(cp, p)
    ys, xs = _evaluation_bases(cp.g, H, cp.N)
    if not ys or not xs:
        return 0
    mats = np.stack(mod.mats) % p                        # |Gamma| x d x d
    big = np.zeros((len(ys) * d, len(xs) * d), dtype=np.int64)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            c = np.zeros(corner.gamma.order, dtype=np.int64)
            for b in mackey_pairs(y, x):
                c = c + corner.coords(b)
            if c.any():
                big[i * d : (i + 1) * d, j * d : (j + 1) * d] = np.tensordot(c % p, mats, axes=1) % p
    return rank_mod_p(big, p)


def tilde_module(q: Quadruple):
    """V~ = (Ebar e) (x)_{k Gamma} V: the left ideal W = Ebar e, the reducer of W (x) V,
    and a solver for coordinates in W."""
    cp, mod = q.cp, q.module
    p, d = mod.p, mod.dim
    corner = _corner(cp, p)
    ctx, e = corner.ctx, corner.e
    gens = [ctx.vec(mackey_product(FiberedElement.basis(b, ctx.ring), e)) for b in ctx.basis]
    from .linalg import _reduce_mod_p

    red, piv = _reduce_mod_p(np.array(gens, dtype=np.int64).reshape(len(gens), -1), p)
    Wb = red[: len(piv)]
    solver = SpanSolver(Wb, p)
    nW = Wb.shape[0]
    rel = []
    for gi, g in enumerate(corner.gamma.elements):
        ege = mackey_product(mackey_product(e, FiberedElement.basis(g, ctx.ring)), e)
        for i in range(nW):
            wg = solver.solve(ctx.vec(mackey_product(ctx.element(Wb[i]), ege)))
            if wg is None:
                raise ConsistencyError("W is not stable under right multiplication by Gamma")
            for j in range(d):
                v = np.zeros(d, dtype=np.int64)
                v[j] = 1
                row = np.kron(wg, v) - np.kron(np.eye(nW, dtype=np.int64)[i], mod.mats[gi] @ v)
                rel.append(row % p)
    return solver, QuotientReducer(rel, nW * d, p), nW


def _evaluation_full(q: Quadruple, H: GroupTable) -> int:
    cp, mod = q.cp, q.module
    p, d = mod.p, mod.dim
    corner = _corner(cp, p)
    ctx, e = corner.ctx, corner.e
    solver, quot, nW = tilde_module(q)
    ys, xs = _evaluation_bases(cp.g, H, cp.N)
    if not ys or not xs:
        return 0
    dimV = quot.dim
    big = np.zeros((len(ys) * dimV, len(xs) * d), dtype=np.int64)
    for i, y in enumerate(ys):
        for j, x in enumerate(xs):
            yx = FiberedElement.from_terms(cp.g, cp.g, cp.N, [(b, 1) for b in mackey_pairs(y, x)], ctx.ring)
            w = solver.solve(ctx.vec(mackey_product(yx, e)))
            if w is None:
                raise ConsistencyError("y x e is outside Ebar e")
            for k in range(d):
                v = np.zeros(d, dtype=np.int64)
                v[k] = 1
                big[i * dimV : (i + 1) * dimV, j * d + k] = quot.reduce(np.kron(w, v))
    return rank_mod_p(big, p)


def tilde_dimension(q: Quadruple) -> int:
    return tilde_module(q)[1].dim


# -- linkage of quadruples and the non-vanishing filter -------------------------------------


def quadruple_linkage(q1: Quadruple, q2: Quadruple) -> bool:
    """Triples linked and V ~ W transported along Gamma_2 -> Gamma_1 (compared by traces)."""
    if q1.cp.N != q2.cp.N or q1.module.p != q2.module.p:
        raise PreconditionError("quadruples live over different N or p")
    bim = gamma_bimodule(q1.cp, q2.cp)
    if bim.empty:
        return False
    if q1.module.dim != q2.module.dim:
        return False
    t = bim.transport()
    tr1, tr2 = q1.module.traces(), q2.module.traces()
    return all(tr1[t.img[y]] == tr2[y] for y in range(len(tr2)))


def nonvanishing_filter(cp: CentralPair, H: GroupTable) -> bool:
    """A section I of H and a faithful (L, lambda) on I linked to (G, K, kappa), with |I| >= |G|."""
    from .cohom.linkage import linkage_via_cohomology
    from .grp import derived_elems, quotient_group as qg, SubgroupRef

    G, N = cp.g, cp.N
    GK, _ = qg(G, SubgroupRef(G, cp.k))
    Gd = set(derived_elems(G, range(G.order)))
    kt = len([k for k in cp.k if k in Gd])
    seen = set()
    for s in sections(H):
        I = s.quotient
        if I.order < G.order or I.order % GK.order:
            continue
        key = I.mul
        if key in seen:
            continue
        seen.add(key)
        Id = set(derived_elems(I, range(I.order)))
        for other in mgg_pairs(I, N):
            if not other.is_faithful or I.order // len(other.k) != GK.order:
                continue
            if len([l for l in other.k if l in Id]) != kt:
                continue
            IL, _ = qg(I, SubgroupRef(I, other.k))
            if isomorphic(IL, GK) is None:
                continue
            if linkage_via_cohomology(cp, other).linked:
                return True
    return False
