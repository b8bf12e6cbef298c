"""Finite groups as explicit multiplication tables.

Elements are the integers ``0..order-1`` and the identity is always ``0``.
Labels are for display only.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Sequence

from ..errors import FormatError, PreconditionError


@dataclass(frozen=True, eq=False)
class GroupTable:
    mul: tuple[tuple[int, ...], ...]
    labels: tuple[str, ...]
    name: str = ""
    # direct products remember their factors: element i*|H|+j <-> (i, j)
    factors: tuple = ()

    def __post_init__(self):
        n = len(self.mul)
        if n == 0 or any(len(row) != n for row in self.mul):
            raise FormatError("multiplication table must be square and nonempty")
        if len(self.labels) != n:
            raise FormatError("one label per element is required")

    @property
    def order(self) -> int:
        return len(self.mul)

    @property
    def id(self) -> int:
        return 0

    @cached_property
    def _hash(self) -> int:
        return hash(self.mul)

    def __hash__(self) -> int:
        return self._hash

    def __eq__(self, other) -> bool:
        if self is other:
            return True
        if not isinstance(other, GroupTable):
            return NotImplemented
        return self.order == other.order and self._hash == other._hash and self.mul == other.mul

    def __repr__(self) -> str:
        return f"GroupTable({self.name or '?'}, order={self.order})"

    # -- validation -------------------------------------------------------

    def validate(self, associativity: bool = True) -> "GroupTable":
        n = self.order
        full = set(range(n))
        for row in self.mul:
            if set(row) != full:
                raise FormatError("table rows are not permutations")
        for c in range(n):
            if {self.mul[r][c] for r in range(n)} != full:
                raise FormatError("table columns are not permutations")
        if self.mul[0] != tuple(range(n)) or any(self.mul[x][0] != x for x in range(n)):
            raise FormatError("element 0 must be the identity")
        if associativity:
            mul = self.mul
            for x in range(n):
                rx = mul[x]
                for y in range(n):
                    rxy = mul[rx[y]]
                    ry = mul[y]
                    for z in range(n):
                        if rxy[z] != rx[ry[z]]:
                            raise FormatError(f"not associative at ({x},{y},{z})")
        return self

    # -- element arithmetic -------------------------------------------------

    @cached_property
    def inv(self) -> tuple[int, ...]:
        return tuple(row.index(0) for row in self.mul)

    def m(self, *xs: int) -> int:
        out = 0
        for x in xs:
            out = self.mul[out][x]
        return out

    def power(self, x: int, k: int) -> int:
        if k < 0:
            x, k = self.inv[x], -k
        out = 0
        for _ in range(k % self.element_orders[x]):
            out = self.mul[out][x]
        return out

    def conj(self, g: int, x: int) -> int:
        """g x g^-1"""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def commutator(self, a: int, b: int) -> int:
        """[a, b] = a b a^-1 b^-1"""
        inv = self.inv
        return self.m(a, b, inv[a], inv[b])

    @cached_property
    def element_orders(self) -> tuple[int, ...]:
        out = []
        for x in range(self.order):
            k, y = 1, x
            while y != 0:
                y = self.mul[y][x]
                k += 1
            out.append(k)
        return tuple(out)

    @cached_property
    def exponent(self) -> int:
        from math import lcm

        return lcm(*self.element_orders)

    @cached_property
    def is_abelian(self) -> bool:
        mul = self.mul
        n = self.order
        return all(mul[x][y] == mul[y][x] for x in range(n) for y in range(x))

    # -- subsets --------------------------------------------------------------

    def closure(self, gens: Iterable[int], start: Iterable[int] = (0,)) -> tuple[int, ...]:
        """Subgroup generated by ``start`` (assumed closed or a subset) and ``gens``."""
        mul = self.mul
        elems = set(start)
        elems.add(0)
        # words must be able to interleave old and new generators
        gens = sorted((set(gens) | elems) - {0})
        frontier = list(elems)
        while frontier:
            new = []
            for x in frontier:
                row = mul[x]
                for s in gens:
                    y = row[s]
                    if y not in elems:
                        elems.add(y)
                        new.append(y)
            frontier = new
        return tuple(sorted(elems))

    @cached_property
    def generators(self) -> tuple[int, ...]:
        """A small generating set, chosen greedily by decreasing element order."""
        orders = self.element_orders
        current: tuple[int, ...] = (0,)
        gens: list[int] = []
        for x in sorted(range(1, self.order), key=lambda x: (-orders[x], x)):
            if len(current) == self.order:
                break
            if x not in current:
                gens.append(x)
                current = self.closure(gens)
        # drop redundant generators (a later one may generate an earlier one)
        changed = True
        while changed:
            changed = False
            for g in list(gens):
                rest = [x for x in gens if x != g]
                if len(self.closure(rest)) == self.order:
                    gens = rest
                    changed = True
                    break
        return tuple(gens)

    @cached_property
    def conjugacy_classes(self) -> tuple[tuple[int, ...], ...]:
        seen = [False] * self.order
        out = []
        for x in range(self.order):
            if seen[x]:
                continue
            cls = sorted({self.conj(g, x) for g in range(self.order)})
            for y in cls:
                seen[y] = True
            out.append(tuple(cls))
        return tuple(out)

    @cached_property
    def class_index(self) -> tuple[int, ...]:
        out = [0] * self.order
        for i, cls in enumerate(self.conjugacy_classes):
            for x in cls:
                out[x] = i
        return tuple(out)

    def is_subgroup(self, elems: Iterable[int]) -> bool:
        s = set(elems)
        if 0 not in s:
            return False
        mul = self.mul
        return all(mul[x][y] in s for x in s for y in s)

    def is_normal(self, elems: Sequence[int]) -> bool:
        s = set(elems)
        return all(self.conj(g, x) in s for g in self.generators for x in s)

    def conjugate_set(self, g: int, elems: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(self.conj(g, x) for x in elems))


@dataclass(frozen=True)
class SubgroupRef:
    parent: GroupTable
    elems: tuple[int, ...]

    @classmethod
    def make(cls, parent: GroupTable, elems: Iterable[int], check: bool = True) -> "SubgroupRef":
        es = tuple(sorted(set(elems)))
        if check and not parent.is_subgroup(es):
            raise PreconditionError("element set is not a subgroup")
        return cls(parent, es)

    @classmethod
    def generated(cls, parent: GroupTable, gens: Iterable[int]) -> "SubgroupRef":
        return cls(parent, parent.closure(gens))

    @classmethod
    def whole(cls, parent: GroupTable) -> "SubgroupRef":
        return cls(parent, tuple(range(parent.order)))

    @classmethod
    def trivial(cls, parent: GroupTable) -> "SubgroupRef":
        return cls(parent, (0,))

    @cached_property
    def set(self) -> frozenset[int]:
        return frozenset(self.elems)

    @property
    def order(self) -> int:
        return len(self.elems)

    def __contains__(self, x: int) -> bool:
        return x in self.set

    def __len__(self) -> int:
        return len(self.elems)

    def __iter__(self):
        return iter(self.elems)

    def __le__(self, other: "SubgroupRef") -> bool:
        return self.set <= other.set

    def is_normal(self) -> bool:
        return self.parent.is_normal(self.elems)

    def normalizes(self, other: "SubgroupRef") -> bool:
        G = self.parent
        return all(G.conj(g, x) in other.set for g in self.elems for x in other.elems)

    def conjugate(self, g: int) -> "SubgroupRef":
        return SubgroupRef(self.parent, self.parent.conjugate_set(g, self.elems))

    def intersect(self, other: "SubgroupRef") -> "SubgroupRef":
        return SubgroupRef(self.parent, tuple(sorted(self.set & other.set)))

    def join(self, other: "SubgroupRef") -> "SubgroupRef":
        return SubgroupRef(self.parent, self.parent.closure(other.elems, start=self.elems))


@dataclass(frozen=True)
class GroupHom:
    dom: GroupTable
    cod: GroupTable
    img: tuple[int, ...]

    def __call__(self, x: int) -> int:
        return self.img[x]

    def check(self) -> "GroupHom":
        if len(self.img) != self.dom.order or self.img[0] != 0:
            raise PreconditionError("not a homomorphism")
        dm, cm, img = self.dom.mul, self.cod.mul, self.img
        for x in range(self.dom.order):
            for y in range(self.dom.order):
                if img[dm[x][y]] != cm[img[x]][img[y]]:
                    raise PreconditionError("not a homomorphism")
        return self

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """self o inner"""
        return GroupHom(inner.dom, self.cod, tuple(self.img[y] for y in inner.img))

    def kernel(self) -> SubgroupRef:
        return SubgroupRef(self.dom, tuple(x for x in range(self.dom.order) if self.img[x] == 0))

    def image(self) -> SubgroupRef:
        return SubgroupRef(self.cod, tuple(sorted(set(self.img))))

    def is_bijective(self) -> bool:
        return self.dom.order == self.cod.order and len(set(self.img)) == self.dom.order

    def inverse(self) -> "GroupHom":
        if not self.is_bijective():
            raise PreconditionError("homomorphism is not invertible")
        out = [0] * self.cod.order
        for x, y in enumerate(self.img):
            out[y] = x
        return GroupHom(self.cod, self.dom, tuple(out))

    @classmethod
    def identity(cls, G: GroupTable) -> "GroupHom":
        return cls(G, G, tuple(range(G.order)))


@dataclass(frozen=True)
class AHom:
    """A homomorphism from a subgroup into Z/N, one residue per element of dom."""

    dom: SubgroupRef
    modulus: int
    vals: tuple[int, ...]

    @cached_property
    def table(self) -> dict[int, int]:
        return dict(zip(self.dom.elems, self.vals))

    def __call__(self, x: int) -> int:
        return self.table[x]

    def check(self) -> "AHom":
        G, N, t = self.dom.parent, self.modulus, self.table
        if len(self.vals) != len(self.dom.elems):
            raise PreconditionError("one value per subgroup element is required")
        for x in self.dom.elems:
            for y in self.dom.elems:
                if t[G.mul[x][y]] != (t[x] + t[y]) % N:
                    raise PreconditionError("values do not define a homomorphism")
        return self

    def kernel(self) -> SubgroupRef:
        return SubgroupRef(self.dom.parent, tuple(x for x, v in zip(self.dom.elems, self.vals) if v == 0))

    def is_faithful(self) -> bool:
        return sum(1 for v in self.vals if v == 0) == 1

    def restrict(self, sub: SubgroupRef | Iterable[int]) -> "AHom":
        elems = sub.elems if isinstance(sub, SubgroupRef) else tuple(sorted(sub))
        t = self.table
        return AHom(SubgroupRef(self.dom.parent, elems), self.modulus, tuple(t[x] for x in elems))

    def is_stable(self) -> bool:
        """Invariant under conjugation by the whole parent group."""
        G, t = self.dom.parent, self.table
        return all(t[G.conj(g, x)] == t[x] for g in G.generators for x in self.dom.elems)

    @classmethod
    def trivial(cls, dom: SubgroupRef, N: int) -> "AHom":
        return cls(dom, N, (0,) * len(dom.elems))
