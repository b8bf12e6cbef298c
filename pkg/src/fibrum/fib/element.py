from __future__ import annotations

from functools import lru_cache
from typing import Iterable, Iterator

from ..errors import PreconditionError
from ..grp import GroupTable
from .pairs import (
    FiberPair,
    canonicalize,
    change_of_fiber_pair,
    conjugate_pair,
    double_coset_reps,
    identity_pair,
    opposite,
    star_product,
)
from .ring import ZZ, Ring


class FiberedElement:
    """A finite linear combination of canonical pairs; an element of B^A_k(G, H)."""

    __slots__ = ("g", "h", "N", "ring", "terms")

    def __init__(self, g: GroupTable, h: GroupTable, N: int, ring: Ring, terms: dict):
        self.g, self.h, self.N, self.ring = g, h, N, ring
        z = ring.zero()
        self.terms = {p: c for p, c in terms.items() if c != z}

    # -- construction -------------------------------------------------------

    @classmethod
    def zero(cls, g: GroupTable, h: GroupTable, N: int, ring: Ring = ZZ) -> "FiberedElement":
        return cls(g, h, N, ring, {})

    @classmethod
    def basis(cls, p: FiberPair, ring: Ring = ZZ, coeff=1) -> "FiberedElement":
        return cls(p.g, p.h, p.N, ring, {canonicalize(p): ring.coerce(coeff)})

    @classmethod
    def from_terms(
        cls, g: GroupTable, h: GroupTable, N: int, items: Iterable[tuple[FiberPair, object]], ring: Ring = ZZ
    ) -> "FiberedElement":
        acc: dict = {}
        for p, c in items:
            if p.g != g or p.h != h or p.N != N:
                raise PreconditionError("term from a different ambient (G, H, N)")
            q = canonicalize(p)
            acc[q] = ring.add(acc.get(q, ring.zero()), ring.coerce(c))
        return cls(g, h, N, ring, acc)

    @classmethod
    def identity(cls, G: GroupTable, N: int, ring: Ring = ZZ) -> "FiberedElement":
        return cls.basis(identity_pair(G, N), ring)

    # -- module structure ---------------------------------------------------

    def _check(self, other: "FiberedElement") -> None:
        if not isinstance(other, FiberedElement):
            raise PreconditionError("expected a FiberedElement")
        if self.ring != other.ring:
            raise PreconditionError(f"ring mismatch: {self.ring.name} vs {other.ring.name}")
        if self.N != other.N or self.g != other.g or self.h != other.h:
            raise PreconditionError("ambient (G, H, N) mismatch")

    def __add__(self, other: "FiberedElement") -> "FiberedElement":
        self._check(other)
        R = self.ring
        acc = dict(self.terms)
        for p, c in other.terms.items():
            acc[p] = R.add(acc.get(p, R.zero()), c)
        return FiberedElement(self.g, self.h, self.N, R, acc)

    def __neg__(self) -> "FiberedElement":
        R = self.ring
        return FiberedElement(self.g, self.h, self.N, R, {p: R.neg(c) for p, c in self.terms.items()})

    def __sub__(self, other: "FiberedElement") -> "FiberedElement":
        return self + (-other)

    def scale(self, a) -> "FiberedElement":
        R = self.ring
        a = R.coerce(a)
        return FiberedElement(self.g, self.h, self.N, R, {p: R.mul(a, c) for p, c in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, FiberedElement):
            return mackey_product(self, other)
        return self.scale(other)

    def __rmul__(self, other):
        return self.scale(other)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FiberedElement):
            return NotImplemented
        return (
            self.ring == other.ring
            and self.N == other.N
            and self.g == other.g
            and self.h == other.h
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __iter__(self) -> Iterator[tuple[FiberPair, object]]:
        return iter(sorted(self.terms.items(), key=lambda t: t[0].key))

    def __len__(self) -> int:
        return len(self.terms)

    def __repr__(self) -> str:
        body = " + ".join(f"{c}*{p!r}" for p, c in self)
        return f"FiberedElement[{self.ring.name}]({body or '0'})"

    def is_zero(self) -> bool:
        return not self.terms

    def coeff(self, p: FiberPair):
        return self.terms.get(canonicalize(p), self.ring.zero())

    def support(self) -> list[FiberPair]:
        return sorted(self.terms)

    def to_ring(self, ring: Ring) -> "FiberedElement":
        """Explicit change of coefficients (Z -> Q or Z -> F_p)."""
        if self.ring == ring:
            return self
        if self.ring.tag == "Fp" or (self.ring.tag == "Q" and ring.tag == "Z"):
            raise PreconditionError(f"no coefficient map {self.ring.name} -> {ring.name}")
        return FiberedElement(self.g, self.h, self.N, ring, {p: ring.coerce(c) for p, c in self.terms.items()})

    def opposite(self) -> "FiberedElement":
        return FiberedElement(
            self.h, self.g, self.N, self.ring, {canonicalize(opposite(p)): c for p, c in self.terms.items()}
        )


def basis_element(p: FiberPair, ring: Ring = ZZ) -> FiberedElement:
    return FiberedElement.basis(p, ring)


@lru_cache(maxsize=500000)
def mackey_pairs(p: FiberPair, q: FiberPair) -> tuple[FiberPair, ...]:
    """Canonical terms of [U,phi] x_H [V,psi] (with multiplicity), via the double-coset
    formula over t in p2(U) \\ H / p1(V)."""
    if p.h != q.g or p.N != q.N:
        raise PreconditionError("Mackey product needs a shared middle group and modulus")
    H = p.h
    nk = q.h.order
    out = []
    for t in double_coset_reps(H, p.p2, q.p1):
        qt = conjugate_pair(q, t * nk) if t else q
        s = star_product(p, qt)
        if s is not None:
            out.append(canonicalize(s))
    return tuple(out)


def mackey_product(x: FiberedElement, y: FiberedElement) -> FiberedElement:
    if x.ring != y.ring:
        raise PreconditionError(f"ring mismatch: {x.ring.name} vs {y.ring.name}")
    if x.h != y.g or x.N != y.N:
        raise PreconditionError("Mackey product needs matching middle group and modulus")
    R = x.ring
    acc: dict = {}
    zero = R.zero()
    for p, a in x.terms.items():
        for q, b in y.terms.items():
            ab = R.mul(a, b)
            for r in mackey_pairs(p, q):
                acc[r] = R.add(acc.get(r, zero), ab)
    return FiberedElement(x.g, y.h, x.N, R, acc)


def product_many(*xs: FiberedElement) -> FiberedElement:
    out = xs[0]
    for x in xs[1:]:
        out = mackey_product(out, x)
    return out


def change_of_fiber(x: FiberedElement, N2: int, image_of_one: int) -> FiberedElement:
    """Push all characters along Z/N -> Z/N', 1 -> image_of_one."""
    R = x.ring
    acc: dict = {}
    for p, c in x.terms.items():
        q = change_of_fiber_pair(p, N2, image_of_one)
        acc[q] = R.add(acc.get(q, R.zero()), c)
    return FiberedElement(x.g, x.h, N2, R, acc)
