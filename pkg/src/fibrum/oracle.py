"""Set-level ground truth for fibered bisets.

Transitive bisets are realized as explicit coset spaces and tensor products are
computed literally as orbit sets. Nothing here uses the double-coset formula.

Convention: a (G, H)-biset is stored as a left A x G x H-set. The right action of
H is ``x.h = (1, h^-1) x``, so ``hact[h]`` is the permutation of ``(1, h)``.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import ConsistencyError, PreconditionError, ResourceError
from .fib.element import FiberedElement
from .fib.pairs import FiberPair, canonicalize
from .fib.ring import ZZ
from .grp import GroupTable, direct_product
from .util import UnionFind

POINT_BOUND = 200_000


@dataclass(frozen=True, eq=False)
class ExplicitFiberedBiset:
    g: GroupTable
    h: GroupTable
    N: int
    a_act: np.ndarray      # permutation of the generator 1 of Z/N
    g_act: np.ndarray      # shape (|G|, n): left action of each g
    h_act: np.ndarray      # shape (|H|, n): left action of each (1, h)

    @property
    def size(self) -> int:
        return int(self.a_act.shape[0])

    def check(self) -> None:
        """Actions are valid, commute, and A acts freely."""
        n = self.size
        ident = np.arange(n)
        G, H = self.g, self.h
        for grp, act in ((G, self.g_act), (H, self.h_act)):
            if not np.array_equal(act[0], ident):
                raise ConsistencyError("identity does not act trivially")
            for s in grp.generators:
                for x in range(grp.order):
                    if not np.array_equal(act[grp.mul[s][x]], act[s][act[x]]):
                        raise ConsistencyError("action does not respect the product")
        a = self.a_act
        for act in (self.g_act, self.h_act):
            for row in act:
                if not np.array_equal(row[a], a[row]):
                    raise ConsistencyError("fiber action does not commute")
        for g in range(G.order):
            for h in range(H.order):
                if not np.array_equal(self.g_act[g][self.h_act[h]], self.h_act[h][self.g_act[g]]):
                    raise ConsistencyError("left and right actions do not commute")
        cur = a.copy()
        for _ in range(1, self.N):
            if np.any(cur == ident):
                raise ConsistencyError("fiber action is not free")
            cur = a[cur]
        if not np.array_equal(cur, ident):
            raise ConsistencyError("fiber generator does not have order N")


def _point_guard(n: int, bound: int) -> None:
    if n > bound:
        raise ResourceError(f"explicit biset with {n} points exceeds bound {bound}")


def _orbit_labels(perms: list[np.ndarray], n: int) -> np.ndarray:
    """Smallest point of each orbit of the group generated by the given permutations."""
    lab = np.arange(n)
    while True:
        new = lab
        for perm in perms:
            new = np.minimum(new, new[perm])
        new = new[new]
        if np.array_equal(new, lab):
            return lab
        lab = new


def realize(p: FiberPair, bound: int = POINT_BOUND) -> ExplicitFiberedBiset:
    """(A x G x H)/U_phi with U_phi = {(phi(u)^-1, u)}.

    Point (a, i) stands for the coset (a, r_i) U_phi where r_i runs over the minimal
    representatives of (G x H)/U; it is stored at index i*N + a.
    """
    G, H, N = p.g, p.h, p.N
    P = direct_product(G, H)
    mul, inv = P.mul, P.inv
    U = set(p.u)
    m = P.order // len(U)
    _point_guard(m * N, bound)
    coset = [-1] * P.order
    reps: list[int] = []
    for z in range(P.order):
        if coset[z] < 0:
            coset_id = len(reps)
            reps.append(z)
            for u in p.u:
                coset[mul[z][u]] = coset_id
    phi = p.phimap

    def perm_of(w: int) -> np.ndarray:
        out = np.empty(m * N, dtype=np.int64)
        for i, r in enumerate(reps):
            wr = mul[w][r]
            j = coset[wr]
            u = mul[inv[reps[j]]][wr]  # w r_i = r_j u
            shift = phi[u]
            for a in range(N):
                out[i * N + a] = j * N + (a + shift) % N
        return out

    nh = H.order
    g_act = np.stack([perm_of(g * nh) for g in range(G.order)])
    h_act = np.stack([perm_of(h) for h in range(nh)])
    idx = np.arange(m * N)
    a_act = (idx // N) * N + (idx % N + 1) % N
    for arr in (a_act, g_act, h_act):
        arr.flags.writeable = False
    return ExplicitFiberedBiset(G, H, N, a_act, g_act, h_act)


@lru_cache(maxsize=4096)
def _realize_cached(p: FiberPair) -> ExplicitFiberedBiset:
    return realize(p)


def tensor_explicit(X: ExplicitFiberedBiset, Y: ExplicitFiberedBiset, bound: int = POINT_BOUND) -> ExplicitFiberedBiset:
    """X (x)_{AH} Y: the free A-orbits among the A x H-orbits of X x Y.

    (a, h) moves (x, y) to (x.(a^-1, h^-1), (a, h) y); orbits come from union-find
    over the generator moves (label propagation).
    """
    if X.h != Y.g or X.N != Y.N:
        raise PreconditionError("tensor product needs a shared middle group and modulus")
    H, N = X.h, X.N
    nx, ny = X.size, Y.size
    total = nx * ny
    _point_guard(total, 10 * bound)
    xs = np.repeat(np.arange(nx), ny)
    ys = np.tile(np.arange(ny), nx)
    # (a, 1) and (1, h) for generators h, each a permutation of X x Y
    moves = [np.argsort(X.a_act)[xs] * ny + Y.a_act[ys]]
    for h in H.generators:
        # x.h^-1 = (1, h) x on the X side; h acts on the left of Y via g_act
        moves.append(X.h_act[h][xs] * ny + Y.g_act[h][ys])
    root = _orbit_labels(moves, total)
    first = np.unique(root)
    ncomp = len(first)
    labels = np.searchsorted(first, root)
    rx, ry = first // ny, first % ny

    a_c = labels[X.a_act[rx] * ny + ry]
    cur = a_c.copy()
    free = np.ones(ncomp, dtype=bool)
    comp_ids = np.arange(ncomp)
    for _ in range(1, N):
        free &= cur != comp_ids
        cur = a_c[cur]
    keep = np.nonzero(free)[0]
    new_index = np.full(ncomp, -1, dtype=np.int64)
    new_index[keep] = np.arange(len(keep))
    _point_guard(len(keep), bound)

    a_act = new_index[a_c[keep]]
    G, K = X.g, Y.h
    g_act = np.stack([new_index[labels[X.g_act[g][rx[keep]] * ny + ry[keep]]] for g in range(G.order)])
    k_act = np.stack([new_index[labels[rx[keep] * ny + Y.h_act[k][ry[keep]]]] for k in range(K.order)])
    if keep.size and (a_act.min() < 0 or g_act.min() < 0 or k_act.min() < 0):
        raise ConsistencyError("free orbits are not closed under the actions")
    return ExplicitFiberedBiset(G, K, N, a_act, g_act.reshape(G.order, -1), k_act.reshape(K.order, -1))


def classify_explicit(X: ExplicitFiberedBiset) -> FiberedElement:
    """Sum over G x H-orbits of A-orbits of the canonical stabilizing pair."""
    G, H, N = X.g, X.h, X.N
    n = X.size
    a = X.a_act.tolist()
    orbit = [-1] * n
    pos = [0] * n
    reps: list[int] = []
    for x in range(n):
        if orbit[x] >= 0:
            continue
        o = len(reps)
        reps.append(x)
        y, j = x, 0
        while orbit[y] < 0:
            orbit[y], pos[y] = o, j
            y = a[y]
            j += 1
        if y != x or j != N:
            raise ConsistencyError("fiber action is not free")
    uf = UnionFind(len(reps))
    g_act = X.g_act.tolist()
    h_act = X.h_act.tolist()
    for acts, gens in ((g_act, G.generators), (h_act, H.generators)):
        for s in gens:
            row = acts[s]
            for o, x in enumerate(reps):
                uf.union(o, orbit[row[x]])
    nh = H.order
    counts: dict[FiberPair, int] = {}
    for cls in uf.classes():
        x = reps[cls[0]]
        items = []
        for g in range(G.order):
            gx_row = g_act[g]
            for h in range(nh):
                y = gx_row[h_act[h][x]]
                if orbit[y] == orbit[x]:
                    items.append((g * nh + h, pos[y]))
        items.sort()
        pair = FiberPair(G, H, N, tuple(i for i, _ in items), tuple(v for _, v in items))
        c = canonicalize(pair)
        counts[c] = counts.get(c, 0) + 1
    return FiberedElement(G, H, N, ZZ, counts)


def disjoint_union(X: ExplicitFiberedBiset, Y: ExplicitFiberedBiset) -> ExplicitFiberedBiset:
    if X.g != Y.g or X.h != Y.h or X.N != Y.N:
        raise PreconditionError("disjoint union needs a common ambient")
    off = X.size
    return ExplicitFiberedBiset(
        X.g,
        X.h,
        X.N,
        np.concatenate([X.a_act, Y.a_act + off]),
        np.concatenate([X.g_act, Y.g_act + off], axis=1),
        np.concatenate([X.h_act, Y.h_act + off], axis=1),
    )


def oracle_product(p: FiberPair, q: FiberPair) -> FiberedElement:
    return classify_explicit(tensor_explicit(_realize_cached(p), _realize_cached(q)))
