"""Finite abelian groups in invariant-factor form, and 2-cochain tables."""
from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

from ..errors import ConsistencyError, PreconditionError
from ..util import prime_factors
from .table import GroupTable

Vec = tuple[int, ...]


@dataclass(frozen=True)
class FinAb:
    factors: tuple[int, ...]

    def __post_init__(self):
        if any(d < 1 for d in self.factors):
            raise PreconditionError("invariant factors must be positive")
        object.__setattr__(self, "factors", tuple(d for d in self.factors if d > 1))

    @classmethod
    def cyclic(cls, n: int) -> "FinAb":
        return cls((n,))

    @property
    def order(self) -> int:
        out = 1
        for d in self.factors:
            out *= d
        return out

    @property
    def rank(self) -> int:
        return len(self.factors)

    @property
    def zero(self) -> Vec:
        return (0,) * len(self.factors)

    def elements(self) -> list[Vec]:
        return [tuple(v) for v in product(*(range(d) for d in self.factors))]

    def add(self, a: Vec, b: Vec) -> Vec:
        return tuple((x + y) % d for x, y, d in zip(a, b, self.factors))

    def sub(self, a: Vec, b: Vec) -> Vec:
        return tuple((x - y) % d for x, y, d in zip(a, b, self.factors))

    def neg(self, a: Vec) -> Vec:
        return tuple(-x % d for x, d in zip(a, self.factors))

    def scale(self, k: int, a: Vec) -> Vec:
        return tuple(k * x % d for x, d in zip(a, self.factors))

    def reduce(self, a: Sequence[int]) -> Vec:
        return tuple(x % d for x, d in zip(a, self.factors))

    def element_order(self, a: Vec) -> int:
        from math import gcd, lcm

        return lcm(1, *(d // gcd(d, x) for x, d in zip(a, self.factors)))


@dataclass(frozen=True)
class AbelianStructure:
    """An isomorphism between an abelian subgroup of some table and a FinAb."""

    fa: FinAb
    gens: tuple[int, ...]          # table elements mapped to the unit vectors
    to_vec: dict[int, Vec]
    from_vec: dict[Vec, int]


def abelian_structure(G: GroupTable, elems: Sequence[int]) -> AbelianStructure:
    """Decompose the abelian subgroup ``elems`` of ``G`` into invariant factors."""
    mul, orders = G.mul, G.element_orders
    es = tuple(sorted(elems))
    for x in es:
        for y in es:
            if mul[x][y] != mul[y][x]:
                raise PreconditionError("subgroup is not abelian")
    n = len(es)
    # primary components, each as (prime, [(exponent, generator)])
    per_prime: list[tuple[int, list[tuple[int, int]]]] = []
    for p in sorted(prime_factors(n)):
        part = [x for x in es if _is_power_of(orders[x], p)]
        per_prime.append((p, _primary_basis(G, part, p)))

    # assemble invariant factors: align exponents, largest last
    width = max((len(b) for _, b in per_prime), default=0)
    factors: list[int] = []
    gens: list[int] = []
    for j in range(width):
        d, g = 1, 0
        for p, basis in per_prime:
            # basis sorted by increasing exponent; right-align
            k = j - (width - len(basis))
            if k >= 0:
                e, x = basis[k]
                d *= p**e
                g = mul[g][x]
        factors.append(d)
        gens.append(g)
    fa = FinAb(tuple(factors))
    keep = [(d, g) for d, g in zip(factors, gens) if d > 1]
    gens = [g for _, g in keep]
    to_vec: dict[int, Vec] = {}
    from_vec: dict[Vec, int] = {}
    for v in fa.elements():
        x = 0
        for c, g in zip(v, gens):
            x = mul[x][G.power(g, c)]
        to_vec[x] = v
        from_vec[v] = x
    if len(to_vec) != n:
        raise ConsistencyError("abelian decomposition is not bijective")
    return AbelianStructure(fa, tuple(gens), to_vec, from_vec)


def _is_power_of(m: int, p: int) -> bool:
    while m % p == 0:
        m //= p
    return m == 1


def _primary_basis(G: GroupTable, part: list[int], p: int) -> list[tuple[int, int]]:
    """Basis of an abelian p-group, as (exponent, generator), exponents ascending."""
    orders = G.element_orders
    size = len(part)
    # type from counts of elements killed by p^k
    exps: list[int] = []
    k, prev = 1, 1
    while prev < size:
        c = sum(1 for x in part if (p**k) % orders[x] == 0)
        num = 0
        r = c // prev
        while r > 1:
            r //= p
            num += 1
        exps.append(num)  # number of cyclic factors of exponent >= k
        prev = c
        k += 1
    # exponent multiset: factors with exponent exactly k = exps[k-1] - exps[k]
    target: list[int] = []
    for k in range(len(exps), 0, -1):
        more = exps[k] if k < len(exps) else 0
        target += [k] * (exps[k - 1] - more)
    # target is descending; find independent generators by backtracking
    result: list[int] = []

    def search(i: int, sub: tuple[int, ...]) -> bool:
        if i == len(target):
            return len(sub) == size
        want = p ** target[i]
        for x in part:
            if orders[x] != want:
                continue
            cyc = G.closure([x])
            if len(set(cyc) & set(sub)) != 1:
                continue
            result.append(x)
            if search(i + 1, G.closure([x], start=sub)):
                return True
            result.pop()
        return False

    if not search(0, (0,)):
        raise ConsistencyError("no basis found for abelian p-group")
    return sorted(zip(target, result))


@dataclass(frozen=True, eq=False)
class CocycleTable:
    """A 2-cochain Q x Q -> b; ``vals[x][y]`` is a residue vector of ``b``."""

    q: GroupTable
    b: FinAb
    vals: tuple[tuple[Vec, ...], ...]

    def __call__(self, x: int, y: int) -> Vec:
        return self.vals[x][y]

    def __eq__(self, other) -> bool:
        return isinstance(other, CocycleTable) and self.q == other.q and self.b == other.b and self.vals == other.vals

    def __hash__(self) -> int:
        return hash(self.vals)

    @classmethod
    def from_function(cls, q: GroupTable, b: FinAb, f: Callable[[int, int], Sequence[int]]) -> "CocycleTable":
        n = q.order
        return cls(q, b, tuple(tuple(b.reduce(f(x, y)) for y in range(n)) for x in range(n)))

    @classmethod
    def zero(cls, q: GroupTable, b: FinAb) -> "CocycleTable":
        return cls.from_function(q, b, lambda x, y: b.zero)

    @classmethod
    def coboundary(cls, q: GroupTable, b: FinAb, mu: Sequence[Vec]) -> "CocycleTable":
        """(d mu)(x, y) = mu(x) + mu(y) - mu(xy)."""
        m = q.mul
        return cls.from_function(q, b, lambda x, y: b.sub(b.add(mu[x], mu[y]), mu[m[x][y]]))

    def is_cocycle(self) -> bool:
        m, b, v = self.q.mul, self.b, self.vals
        n = self.q.order
        for x in range(n):
            for y in range(n):
                xy = m[x][y]
                for z in range(n):
                    if b.add(v[x][y], v[xy][z]) != b.add(v[y][z], v[x][m[y][z]]):
                        return False
        return True

    def is_symmetric(self) -> bool:
        n = self.q.order
        return all(self.vals[x][y] == self.vals[y][x] for x in range(n) for y in range(x))

    def is_normalized(self) -> bool:
        return self.vals[0][0] == self.b.zero

    def __add__(self, other: "CocycleTable") -> "CocycleTable":
        b = self.b
        return CocycleTable.from_function(self.q, b, lambda x, y: b.add(self.vals[x][y], other.vals[x][y]))

    def __neg__(self) -> "CocycleTable":
        b = self.b
        return CocycleTable.from_function(self.q, b, lambda x, y: b.neg(self.vals[x][y]))

    def __sub__(self, other: "CocycleTable") -> "CocycleTable":
        return self + (-other)

    def map_coefficients(self, target: FinAb, f: Callable[[Vec], Sequence[int]]) -> "CocycleTable":
        return CocycleTable.from_function(self.q, target, lambda x, y: f(self.vals[x][y]))

    def pullback(self, hom_img: Sequence[int], source: GroupTable) -> "CocycleTable":
        """(x, y) -> alpha(h(x), h(y)) for a homomorphism h: source -> q."""
        return CocycleTable.from_function(source, self.b, lambda x, y: self.vals[hom_img[x]][hom_img[y]])

    def as_lists(self) -> list:
        return [[list(v) for v in row] for row in self.vals]
