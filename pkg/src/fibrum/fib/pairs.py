"""Pairs (U, phi): a subgroup U of G x H with a homomorphism phi: U -> Z/N.

An element (g, h) of G x H is stored as the index g*|H| + h.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from typing import Iterable, NamedTuple, Sequence

from ..errors import ConsistencyError, PreconditionError, ResourceError
from ..grp import GroupTable, SubgroupRef, direct_product, homs_to_cyclic, product_subgroups

PRODUCT_BOUND = 256


@dataclass(frozen=True, eq=False)
class Ambient:
    g: GroupTable
    h: GroupTable

    @cached_property
    def prod(self) -> GroupTable:
        return direct_product(self.g, self.h)

    @cached_property
    def conj(self) -> tuple[tuple[int, ...], ...]:
        """conj[z][x] = z x z^-1 in G x H"""
        P = self.prod
        mul, inv = P.mul, P.inv
        return tuple(tuple(mul[mul[z][x]][inv[z]] for x in range(P.order)) for z in range(P.order))


@lru_cache(maxsize=1024)
def ambient(g: GroupTable, h: GroupTable) -> Ambient:
    if g.order * h.order > PRODUCT_BOUND:
        raise ResourceError(f"|G x H| exceeds {PRODUCT_BOUND}")
    return Ambient(g, h)


class Invariant(NamedTuple):
    """(p, k, chi): a subgroup p, a normal subgroup k of p, a character chi of k (aligned)."""

    p: tuple[int, ...]
    k: tuple[int, ...]
    chi: tuple[int, ...]


@dataclass(frozen=True, eq=False)
class FiberPair:
    g: GroupTable
    h: GroupTable
    N: int
    u: tuple[int, ...]
    phi: tuple[int, ...]

    def __hash__(self) -> int:
        return hash((self.u, self.phi, self.N, self.g.order, self.h.order))

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, FiberPair):
            return NotImplemented
        return (
            self.u == other.u
            and self.phi == other.phi
            and self.N == other.N
            and self.g == other.g
            and self.h == other.h
        )

    def __lt__(self, other: "FiberPair") -> bool:
        return (self.u, self.phi) < (other.u, other.phi)

    def __repr__(self) -> str:
        return f"FiberPair({self.g.name}x{self.h.name}, N={self.N}, |U|={len(self.u)}, phi={self.phi})"

    @property
    def amb(self) -> Ambient:
        return ambient(self.g, self.h)

    @property
    def key(self) -> tuple:
        return (self.u, self.phi)

    @cached_property
    def phimap(self) -> dict[int, int]:
        return dict(zip(self.u, self.phi))

    def __call__(self, g: int, h: int) -> int:
        return self.phimap[g * self.h.order + h]

    @cached_property
    def pairs(self) -> tuple[tuple[int, int], ...]:
        nh = self.h.order
        return tuple(divmod(x, nh) for x in self.u)

    @cached_property
    def p1(self) -> tuple[int, ...]:
        return tuple(sorted({a for a, _ in self.pairs}))

    @cached_property
    def p2(self) -> tuple[int, ...]:
        return tuple(sorted({b for _, b in self.pairs}))

    @cached_property
    def k1(self) -> tuple[int, ...]:
        return tuple(a for a, b in self.pairs if b == 0)

    @cached_property
    def k2(self) -> tuple[int, ...]:
        return tuple(sorted(b for a, b in self.pairs if a == 0))

    @cached_property
    def phi1(self) -> tuple[int, ...]:
        nh, m = self.h.order, self.phimap
        return tuple(m[k * nh] for k in self.k1)

    @cached_property
    def phi2(self) -> tuple[int, ...]:
        # phi(1, l) = phi_2(l)^-1
        m, N = self.phimap, self.N
        return tuple(-m[l] % N for l in self.k2)

    @property
    def l(self) -> Invariant:
        return Invariant(self.p1, self.k1, self.phi1)

    @property
    def r(self) -> Invariant:
        return Invariant(self.p2, self.k2, self.phi2)

    @property
    def l0(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.k1, self.phi1)

    @property
    def r0(self) -> tuple[tuple[int, ...], tuple[int, ...]]:
        return (self.k2, self.phi2)

    @property
    def is_covering(self) -> bool:
        return len(self.p1) == self.g.order and len(self.p2) == self.h.order

    def subgroup(self) -> SubgroupRef:
        return SubgroupRef(self.amb.prod, self.u)

    def canonical(self) -> "FiberPair":
        return canonicalize(self)

    def opposite(self) -> "FiberPair":
        return opposite(self)


def make_pair(
    G: GroupTable,
    H: GroupTable,
    N: int,
    u: Iterable,
    phi: Sequence[int] | None = None,
    check: bool = True,
) -> FiberPair:
    """Build a pair from elements given as (g, h) tuples or product indices,
    with phi values aligned to the given element order (default: trivial)."""
    if N < 1:
        raise PreconditionError("modulus must be positive")
    nh = H.order
    items = [x[0] * nh + x[1] if isinstance(x, (tuple, list)) else int(x) for x in u]
    vals = [0] * len(items) if phi is None else [int(v) % N for v in phi]
    if len(vals) != len(items):
        raise PreconditionError("phi needs one value per element of U")
    order = sorted(range(len(items)), key=lambda i: items[i])
    us = tuple(items[i] for i in order)
    ph = tuple(vals[i] for i in order)
    if len(set(us)) != len(us):
        raise PreconditionError("repeated element in U")
    p = FiberPair(G, H, N, us, ph)
    if check:
        validate_pair(p)
    return p


def validate_pair(p: FiberPair) -> None:
    P = p.amb.prod
    if any(not 0 <= x < P.order for x in p.u):
        raise PreconditionError("element index out of range")
    if not P.is_subgroup(p.u):
        raise PreconditionError("U is not a subgroup of G x H")
    m, N, mul = p.phimap, p.N, P.mul
    for x in p.u:
        for y in p.u:
            if m[mul[x][y]] != (m[x] + m[y]) % N:
                raise PreconditionError("phi is not a homomorphism")


@lru_cache(maxsize=200000)
def _canon_subgroup(amb: Ambient, u: tuple[int, ...]) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """Least conjugate of u, and every z with z u z^-1 equal to it."""
    best = None
    zs: list[int] = []
    for c_z, z in zip(amb.conj, range(len(amb.conj))):
        cu = tuple(sorted(c_z[x] for x in u))
        if best is None or cu < best:
            best, zs = cu, [z]
        elif cu == best:
            zs.append(z)
    return best, tuple(zs)


def canonical_subgroup(G: GroupTable, H: GroupTable, u: tuple[int, ...]) -> tuple[int, ...]:
    return _canon_subgroup(ambient(G, H), tuple(u))[0]


@lru_cache(maxsize=400000)
def canonicalize(p: FiberPair) -> FiberPair:
    """Lexicographically least (u, phi) over the G x H-conjugation orbit."""
    amb = p.amb
    cu, zs = _canon_subgroup(amb, p.u)
    pos = {x: i for i, x in enumerate(cu)}
    best = None
    for z in zs:
        c = amb.conj[z]
        ph = [0] * len(cu)
        for x, v in zip(p.u, p.phi):
            ph[pos[c[x]]] = v
        t = tuple(ph)
        if best is None or t < best:
            best = t
    if cu == p.u and best == p.phi:
        return p
    return FiberPair(p.g, p.h, p.N, cu, best)


def conjugate_pair(p: FiberPair, z: int) -> FiberPair:
    """^z(U, phi) for z in G x H (product index): z u z^-1 -> phi(u)."""
    c = p.amb.conj[z]
    items = sorted((c[x], v) for x, v in zip(p.u, p.phi))
    return FiberPair(p.g, p.h, p.N, tuple(x for x, _ in items), tuple(v for _, v in items))


def opposite(p: FiberPair) -> FiberPair:
    """U^op = {(h, g)}, phi^op(h, g) = -phi(g, h)."""
    ng = p.g.order
    items = sorted((b * ng + a, -v % p.N) for (a, b), v in zip(p.pairs, p.phi))
    return FiberPair(p.h, p.g, p.N, tuple(x for x, _ in items), tuple(v for _, v in items))


def star_product(p: FiberPair, q: FiberPair) -> FiberPair | None:
    """(U*V, phi*psi), or None when phi_2 and psi_1 disagree on k2(U) & k1(V)."""
    if p.h != q.g or p.N != q.N:
        raise PreconditionError("star product needs a shared middle group and modulus")
    N = p.N
    phi2 = dict(zip(p.k2, p.phi2))
    psi1 = dict(zip(q.k1, q.phi1))
    for x, v in phi2.items():
        if x in psi1 and psi1[x] != v:
            return None
    left: dict[int, list[tuple[int, int]]] = {}
    for (a, b), v in zip(p.pairs, p.phi):
        left.setdefault(b, []).append((a, v))
    right: dict[int, list[tuple[int, int]]] = {}
    for (b, c), v in zip(q.pairs, q.phi):
        right.setdefault(b, []).append((c, v))
    nk = q.h.order
    out: dict[int, int] = {}
    for b, lst in left.items():
        rst = right.get(b)
        if not rst:
            continue
        for a, v in lst:
            base = a * nk
            for c, w in rst:
                z = base + c
                val = (v + w) % N
                old = out.get(z)
                if old is None:
                    out[z] = val
                elif old != val:
                    raise ConsistencyError("phi*psi depends on the middle element")
    us = tuple(sorted(out))
    return FiberPair(p.g, q.h, N, us, tuple(out[x] for x in us))


def double_coset_reps(H: GroupTable, A: Sequence[int], B: Sequence[int]) -> list[int]:
    """Minimal element of every double coset A h B."""
    mul = H.mul
    seen = bytearray(H.order)
    reps = []
    for h in range(H.order):
        if seen[h]:
            continue
        reps.append(h)
        for a in A:
            ah = mul[a][h]
            row = mul[ah]
            for b in B:
                seen[row[b]] = 1
    return reps


def standard_basis(G: GroupTable, H: GroupTable, N: int, subgroup_filter=None) -> list[FiberPair]:
    """One canonical pair per G x H-orbit of pairs (U, phi), sorted by (u, phi).

    ``subgroup_filter(u)`` (on canonical subgroups) restricts the subgroups used.
    """
    amb = ambient(G, H)
    subs = sorted({_canon_subgroup(amb, U)[0] for U in product_subgroups(G, H)})
    if subgroup_filter is not None:
        subs = [U for U in subs if subgroup_filter(U)]
    out: set[FiberPair] = set()
    for U in subs:
        sub = SubgroupRef(amb.prod, U)
        for chi in homs_to_cyclic(sub, N):
            out.add(canonicalize(FiberPair(G, H, N, U, chi.vals)))
    return sorted(out)


def covering_filter(G: GroupTable, H: GroupTable):
    nh = H.order

    def keep(u: tuple[int, ...]) -> bool:
        return len({x // nh for x in u}) == G.order and len({x % nh for x in u}) == H.order

    return keep


def identity_pair(G: GroupTable, N: int) -> FiberPair:
    n = G.order
    return FiberPair(G, G, N, tuple(x * n + x for x in range(n)), (0,) * n)


def change_of_fiber_pair(p: FiberPair, N2: int, image_of_one: int) -> FiberPair:
    c = image_of_one % N2
    if (p.N * c) % N2:
        raise PreconditionError("1 -> c does not define a homomorphism Z/N -> Z/N'")
    return canonicalize(FiberPair(p.g, p.h, N2, p.u, tuple(v * c % N2 for v in p.phi)))
