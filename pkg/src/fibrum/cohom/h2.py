"""Second cohomology H^2(Q, b) with trivial action, over finite abelian b.

Each cyclic factor Z/d of b splits by CRT into Z/p^k pieces. On a piece,
Z^2 is the kernel of the cocycle-identity matrix and H^2 = Z^2/B^2 is read off a
second Smith form. Class vectors are concatenated piece coordinates, each one a
residue modulo a prime power.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache
from itertools import product
from math import gcd
from typing import Callable, Iterable, Sequence

import numpy as np

from ..errors import ConsistencyError, PreconditionError, ResourceError
from ..grp import CocycleTable, FinAb, GroupHom, GroupTable
from ..util import prime_factors
from .modlin import LocalSNF, snf_local

Q_BOUND = 16

Vec = tuple[int, ...]


# -- integer systems -----------------------------------------------------------


@lru_cache(maxsize=None)
def _cocycle_matrix(Q: GroupTable, symmetric: bool = False) -> np.ndarray:
    """Rows: a(x,y) + a(xy,z) - a(y,z) - a(x,yz) for every triple."""
    n = Q.order
    mul = np.array(Q.mul, dtype=np.int64)
    x, y, z = np.meshgrid(np.arange(n), np.arange(n), np.arange(n), indexing="ij")
    x, y, z = x.ravel(), y.ravel(), z.ravel()
    rows = np.arange(n**3)
    A = np.zeros((n**3, n * n), dtype=np.int64)
    np.add.at(A, (rows, x * n + y), 1)
    np.add.at(A, (rows, mul[x, y] * n + z), 1)
    np.add.at(A, (rows, y * n + z), -1)
    np.add.at(A, (rows, x * n + mul[y, z]), -1)
    if symmetric:
        S = np.zeros((n * n, n * n), dtype=np.int64)
        i, j = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
        i, j = i.ravel(), j.ravel()
        r = np.arange(n * n)
        np.add.at(S, (r, i * n + j), 1)
        np.add.at(S, (r, j * n + i), -1)
        A = np.vstack([A, S])
    A = np.unique(A, axis=0)
    return A[np.any(A != 0, axis=1)]


@lru_cache(maxsize=None)
def _coboundary_matrix(Q: GroupTable) -> np.ndarray:
    """Columns: d(delta_s) with (d mu)(x,y) = mu(x) + mu(y) - mu(xy)."""
    n = Q.order
    mul = np.array(Q.mul, dtype=np.int64)
    x, y = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    x, y = x.ravel(), y.ravel()
    rows = np.arange(n * n)
    A = np.zeros((n * n, n), dtype=np.int64)
    np.add.at(A, (rows, x), 1)
    np.add.at(A, (rows, y), 1)
    np.add.at(A, (rows, mul[x, y]), -1)
    return A


@lru_cache(maxsize=None)
def _cocycle_snf(Q: GroupTable, p: int, k: int, symmetric: bool = False) -> LocalSNF:
    return snf_local(_cocycle_matrix(Q, symmetric), p, k)


def _check_bound(Q: GroupTable, bound: int) -> None:
    if Q.order > bound:
        raise ResourceError(f"|Q| = {Q.order} exceeds the cohomology bound {bound}")


def _prime_powers(d: int) -> list[tuple[int, int]]:
    return sorted(prime_factors(d).items())


def _crt_idempotent(d: int, q: int) -> int:
    """The residue mod d that is 1 mod q and 0 mod d/q."""
    c = d // q
    return c * pow(c, -1, q) % d if q > 1 else 0


# -- pieces -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class _Piece:
    comp: int                  # which cyclic factor of b
    p: int
    k: int
    z: LocalSNF                # Smith form of the cocycle system mod p^k
    zcols: tuple[int, ...]     # columns carrying Z^2 generators (exponent > 0)
    h: LocalSNF                # Smith form of the relation matrix of Z^2/B^2
    hcols: tuple[int, ...]     # columns carrying H^2 generators (exponent > 0)

    @property
    def q(self) -> int:
        return self.p**self.k

    def z_coords(self, x: np.ndarray) -> np.ndarray:
        """Coordinates of a cocycle vector in the Z^2 generators; raises if not a cocycle."""
        q, k = self.q, self.k
        y = self.z.Tinv @ x % q
        out = np.zeros(len(self.zcols), dtype=np.int64)
        for i, e in enumerate(self.z.exps):
            if e == 0 and y[i]:
                raise PreconditionError("table is not a 2-cocycle")
        for t, i in enumerate(self.zcols):
            step = self.p ** (k - self.z.exps[i])
            if y[i] % step:
                raise PreconditionError("table is not a 2-cocycle")
            out[t] = y[i] // step
        return out

    def class_coords(self, x: np.ndarray) -> Vec:
        c = self.z_coords(x)
        v = c @ self.h.T % self.q
        return tuple(int(v[j]) % self.p ** self.h.exps[j] for j in self.hcols)

    def z_generator(self, t: int) -> np.ndarray:
        i = self.zcols[t]
        return self.z.T[:, i] * self.p ** (self.k - self.z.exps[i]) % self.q

    def from_z_coords(self, c: np.ndarray) -> np.ndarray:
        x = np.zeros(self.z.T.shape[0], dtype=np.int64)
        for t in range(len(self.zcols)):
            if c[t]:
                x = (x + int(c[t]) * self.z_generator(t)) % self.q
        return x

    def class_generator(self, j: int) -> np.ndarray:
        return self.from_z_coords(self.h.Tinv[self.hcols[j]] % self.q)

    @property
    def orders(self) -> tuple[int, ...]:
        return tuple(self.p ** self.h.exps[j] for j in self.hcols)


def _make_piece(Q: GroupTable, comp: int, p: int, k: int) -> _Piece:
    z = _cocycle_snf(Q, p, k)
    zcols = tuple(i for i, e in enumerate(z.exps) if e > 0)
    q = p**k
    rel = []
    for t, i in enumerate(zcols):
        row = np.zeros(len(zcols), dtype=np.int64)
        row[t] = p ** z.exps[i]
        rel.append(row)
    piece = _Piece(comp, p, k, z, zcols, None, ())  # type: ignore[arg-type]
    B = _coboundary_matrix(Q) % q
    for s in range(B.shape[1]):
        rel.append(piece.z_coords(B[:, s]))
    R = np.array(rel, dtype=np.int64).reshape(len(rel), len(zcols)) if zcols else np.zeros((0, 0), dtype=np.int64)
    h = snf_local(R, p, k) if zcols else LocalSNF(p, k, (), np.zeros((0, 0), np.int64), np.zeros((0, 0), np.int64))
    hcols = tuple(j for j, e in enumerate(h.exps) if e > 0)
    return _Piece(comp, p, k, z, zcols, h, hcols)


# -- H^2 -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class H2Group:
    q: GroupTable
    b: FinAb
    pieces: tuple[_Piece, ...]

    @cached_property
    def invariants(self) -> tuple[int, ...]:
        """Prime-power orders of the coordinates of a class vector."""
        return tuple(o for pc in self.pieces for o in pc.orders)

    @cached_property
    def invariant_factors(self) -> tuple[int, ...]:
        """H^2 in the form Z/d_1 x ... with d_1 | d_2 | ..."""
        by_p: dict[int, list[int]] = {}
        for o in self.invariants:
            p = min(prime_factors(o))
            by_p.setdefault(p, []).append(o)
        length = max((len(v) for v in by_p.values()), default=0)
        out = [1] * length
        for v in by_p.values():
            v.sort(reverse=True)
            for i, o in enumerate(v):
                out[length - 1 - i] *= o
        return tuple(out)

    @property
    def order(self) -> int:
        out = 1
        for o in self.invariants:
            out *= o
        return out

    @property
    def exponent(self) -> int:
        from math import lcm

        return lcm(1, *self.invariants)

    @property
    def zero(self) -> Vec:
        return (0,) * len(self.invariants)

    def add(self, u: Vec, v: Vec) -> Vec:
        return tuple((a + c) % o for a, c, o in zip(u, v, self.invariants))

    def neg(self, u: Vec) -> Vec:
        return tuple(-a % o for a, o in zip(u, self.invariants))

    def sub(self, u: Vec, v: Vec) -> Vec:
        return self.add(u, self.neg(v))

    def scale(self, m: int, u: Vec) -> Vec:
        return tuple(m * a % o for a, o in zip(u, self.invariants))

    def elements(self) -> list[Vec]:
        return [tuple(v) for v in product(*(range(o) for o in self.invariants))]

    def _piece_vector(self, alpha: CocycleTable, pc: _Piece) -> np.ndarray:
        n = self.q.order
        d = pc.q
        return np.array([alpha.vals[x][y][pc.comp] % d for x in range(n) for y in range(n)], dtype=np.int64)

    def _check_ambient(self, alpha: CocycleTable) -> None:
        if alpha.q != self.q or alpha.b != self.b:
            raise PreconditionError("cocycle has a different ambient")

    def classify(self, alpha: CocycleTable) -> Vec:
        """Normal-form vector of [alpha]; raises if alpha is not a cocycle."""
        self._check_ambient(alpha)
        out: list[int] = []
        for pc in self.pieces:
            out.extend(pc.class_coords(self._piece_vector(alpha, pc)))
        return tuple(out)

    def is_coboundary(self, alpha: CocycleTable) -> bool:
        return self.classify(alpha) == self.zero

    def _assemble(self, parts: Iterable[tuple[_Piece, np.ndarray]]) -> CocycleTable:
        n = self.q.order
        b = self.b
        vals = np.zeros((n * n, max(b.rank, 1)), dtype=np.int64)
        for pc, x in parts:
            d = b.factors[pc.comp]
            vals[:, pc.comp] = (vals[:, pc.comp] + x * _crt_idempotent(d, pc.q)) % d
        return CocycleTable.from_function(self.q, b, lambda s, t: tuple(int(v) for v in vals[s * n + t][: b.rank]))

    def representative(self, vec: Sequence[int]) -> CocycleTable:
        """A cocycle with the given class vector (a fixed integer combination of generators)."""
        if len(vec) != len(self.invariants):
            raise PreconditionError("class vector has the wrong length")
        parts = []
        pos = 0
        for pc in self.pieces:
            x = np.zeros(self.q.order**2, dtype=np.int64)
            for j in range(len(pc.hcols)):
                if vec[pos + j]:
                    x = (x + int(vec[pos + j]) * pc.class_generator(j)) % pc.q
            pos += len(pc.hcols)
            parts.append((pc, x))
        return self._assemble(parts)

    def z2_basis(self) -> list[tuple[CocycleTable, int]]:
        """Generators of Z^2 with their orders."""
        out = []
        for pc in self.pieces:
            for t, i in enumerate(pc.zcols):
                out.append((self._assemble([(pc, pc.z_generator(t))]), pc.p ** pc.z.exps[i]))
        return out

    def b2_basis(self) -> list[CocycleTable]:
        """Spanning set of B^2: coboundaries of the point-mass 1-cochains on each factor."""
        b = self.b
        out = []
        for c in range(b.rank):
            for s in range(self.q.order):
                mu = [b.zero] * self.q.order
                mu[s] = tuple(1 if i == c else 0 for i in range(b.rank))
                out.append(CocycleTable.coboundary(self.q, b, mu))
        return out

    def to_json(self) -> dict:
        return {
            "q_order": self.q.order,
            "coefficients": list(self.b.factors),
            "invariant_factors": list(self.invariant_factors),
            "coordinates": list(self.invariants),
            "order": self.order,
            "representatives": [self.representative(self._unit(j)).as_lists() for j in range(len(self.invariants))],
        }

    def _unit(self, j: int) -> Vec:
        return tuple(1 if i == j else 0 for i in range(len(self.invariants)))


@lru_cache(maxsize=None)
def _h2_cached(Q: GroupTable, b: FinAb) -> H2Group:
    pieces = []
    for comp, d in enumerate(b.factors):
        for p, k in _prime_powers(d):
            pieces.append(_make_piece(Q, comp, p, k))
    H = H2Group(Q, b, tuple(pieces))
    if Q.order % H.exponent:
        raise ConsistencyError("exponent of H^2 does not divide |Q|")
    return H


def h2_group(Q: GroupTable, b: FinAb, bound: int = Q_BOUND) -> H2Group:
    _check_bound(Q, bound)
    return _h2_cached(Q, b)


@dataclass(frozen=True, eq=False)
class H2Class:
    group: H2Group
    rep: CocycleTable
    vec: Vec

    def __eq__(self, other) -> bool:
        return isinstance(other, H2Class) and self.group is other.group and self.vec == other.vec

    def __hash__(self) -> int:
        return hash(self.vec)

    @property
    def is_trivial(self) -> bool:
        return self.vec == self.group.zero

    def __add__(self, other: "H2Class") -> "H2Class":
        return H2Class(self.group, self.rep + other.rep, self.group.add(self.vec, other.vec))

    def __neg__(self) -> "H2Class":
        return H2Class(self.group, -self.rep, self.group.neg(self.vec))


def h2_class(alpha: CocycleTable, bound: int = Q_BOUND) -> H2Class:
    H = h2_group(alpha.q, alpha.b, bound)
    return H2Class(H, alpha, H.classify(alpha))


# -- symmetric cocycles --------------------------------------------------------


def symmetric_cocycle_basis(Q: GroupTable, b: FinAb, bound: int = Q_BOUND) -> list[CocycleTable]:
    """Generators of the symmetric 2-cocycles Q x Q -> b (Q abelian)."""
    _check_bound(Q, bound)
    if not Q.is_abelian:
        raise PreconditionError("symmetric cocycles are taken on abelian groups")
    H = h2_group(Q, b, bound)
    out = []
    for comp, d in enumerate(b.factors):
        for p, k in _prime_powers(d):
            z = _cocycle_snf(Q, p, k, True)
            pc = _Piece(comp, p, k, z, (), None, ())  # type: ignore[arg-type]
            for i, e in enumerate(z.exps):
                if e > 0:
                    out.append(H._assemble([(pc, z.T[:, i] * p ** (k - e) % p**k)]))
    for c in out:
        if not (c.is_symmetric() and c.is_cocycle()):
            raise ConsistencyError("symmetric cocycle basis element fails its identities")
    return out


# -- class operations ----------------------------------------------------------


def coefficient_map(alpha: CocycleTable, target: FinAb, f: Callable[[Vec], Sequence[int]]) -> CocycleTable:
    """epsilon maps: post-compose with a homomorphism b -> target."""
    return alpha.map_coefficients(target, f)


def inflate(alpha: CocycleTable, proj: GroupHom) -> CocycleTable:
    """iota maps: pull back along a surjection Q -> S (alpha lives on S)."""
    if proj.cod != alpha.q:
        raise PreconditionError("inflation map does not land in the cocycle's group")
    return alpha.pullback(proj.img, proj.dom)


def act_by_automorphism(alpha: CocycleTable, eta: GroupHom) -> CocycleTable:
    """alpha o (eta^-1 x eta^-1) for an automorphism eta of Q."""
    if eta.dom != alpha.q or eta.cod != alpha.q or not eta.is_bijective():
        raise PreconditionError("need an automorphism of the cocycle's group")
    inv = [0] * alpha.q.order
    for x, y in enumerate(eta.img):
        inv[y] = x
    return alpha.pullback(inv, alpha.q)


def dual_homs(b: FinAb, N: int) -> list[Vec]:
    """Hom(b, Z/N) as the images of the standard generators."""
    steps = [N // gcd(N, d) for d in b.factors]
    return [tuple(v) for v in product(*(range(0, N, int(s)) for s in steps))]


def apply_dual(mu: Vec, v: Vec, N: int) -> int:
    return sum(a * x for a, x in zip(mu, v)) % N


def psi(alpha: CocycleTable, N: int, bound: int = Q_BOUND) -> dict[Vec, Vec]:
    """Psi([alpha]): mu -> [mu o alpha] in H^2(Q, Z/N), for every mu in Hom(b, Z/N)."""
    target = FinAb.cyclic(N)
    H = h2_group(alpha.q, target, bound)
    return {
        mu: H.classify(alpha.map_coefficients(target, lambda v, mu=mu: (apply_dual(mu, v, N),)))
        for mu in dual_homs(alpha.b, N)
    }


def subgroup_closure(H: H2Group, gens: Sequence[Vec]) -> dict[Vec, tuple[int, ...]]:
    """Subgroup generated by ``gens``; each element with the first coefficient vector reaching it."""
    out: dict[Vec, tuple[int, ...]] = {H.zero: (0,) * len(gens)}
    frontier = [H.zero]
    while frontier:
        nxt = []
        for v in frontier:
            coeffs = out[v]
            for i, g in enumerate(gens):
                w = H.add(v, g)
                if w not in out:
                    c = list(coeffs)
                    c[i] += 1
                    out[w] = tuple(c)
                    nxt.append(w)
        frontier = sorted(nxt)
    return out


def symmetric_image(Q: GroupTable, b: FinAb, bound: int = Q_BOUND) -> dict[Vec, tuple[int, ...]]:
    """Classes in H^2(Q, b) inflated from symmetric cocycles on Q/Q'."""
    from ..grp import derived_subgroup, quotient_group

    H = h2_group(Q, b, bound)
    Qab, nu = quotient_group(Q, derived_subgroup(Q))
    gens = [H.classify(inflate(g, nu)) for g in symmetric_cocycle_basis(Qab, b, bound)]
    return subgroup_closure(H, gens)
