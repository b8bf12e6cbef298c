"""Linearization to class functions over F_p and the simplicity probe for functors
generated by their value at the trivial group."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Iterable, Sequence

import numpy as np

from .errors import ConsistencyError, PreconditionError
from .fib import ZZ, FiberedElement, FiberPair, ambient, double_coset_reps, mackey_product, standard_basis
from .grp import GroupTable, build_group
from .linalg import kernel_mod_p, rank_mod_p
from .util import is_prime, least_prime_1_mod, primitive_root


def _fp(c, p: int) -> int:
    if isinstance(c, Fraction):
        if c.denominator % p == 0:
            raise PreconditionError(f"coefficient {c} is not defined mod {p}")
        return c.numerator * pow(c.denominator, -1, p) % p
    return int(c) % p


def character_prime(groups: Iterable[GroupTable], N: int) -> int:
    """Least prime p = 1 mod lcm(exp(G), N) over the given groups."""
    gs = list(groups)
    m = lcm(N, *(G.exponent for G in gs)) if gs else N
    orders = 1
    for G in gs:
        orders *= G.order
    return least_prime_1_mod(m, orders)


def zeta(p: int, N: int) -> int:
    """Image of 1 under the fixed embedding Z/N -> F_p^x."""
    if not is_prime(p) or (p - 1) % N:
        raise PreconditionError(f"Z/{N} does not embed in F_{p}^x")
    return pow(primitive_root(p), (p - 1) // N, p)


@dataclass(frozen=True, eq=False)
class ClassFunction:
    """Values in F_p on the conjugacy classes of G (in G.conjugacy_classes order)."""

    g: GroupTable
    p: int
    N: int
    values: tuple[int, ...]

    def __post_init__(self):
        if len(self.values) != len(self.g.conjugacy_classes):
            raise PreconditionError("one value per conjugacy class expected")
        if self.g.order % self.p == 0:
            raise PreconditionError(f"p = {self.p} divides |G| = {self.g.order}")

    @classmethod
    def from_elements(cls, g: GroupTable, p: int, N: int, vals: Sequence[int]) -> "ClassFunction":
        out = []
        for cl in g.conjugacy_classes:
            v = vals[cl[0]] % p
            if any(vals[x] % p != v for x in cl):
                raise PreconditionError("values are not constant on a conjugacy class")
            out.append(v)
        return cls(g, p, N, tuple(out))

    @classmethod
    def constant(cls, g: GroupTable, p: int, N: int, c: int = 1) -> "ClassFunction":
        return cls(g, p, N, tuple(c % p for _ in g.conjugacy_classes))

    @classmethod
    def indicator(cls, g: GroupTable, p: int, N: int, i: int) -> "ClassFunction":
        return cls(g, p, N, tuple(int(j == i) for j in range(len(g.conjugacy_classes))))

    def __call__(self, x: int) -> int:
        return self.values[self.g.class_index[x]]

    def _check(self, other: "ClassFunction") -> None:
        if self.g != other.g or self.p != other.p or self.N != other.N:
            raise PreconditionError("class functions live over different data")

    def __add__(self, other: "ClassFunction") -> "ClassFunction":
        self._check(other)
        return ClassFunction(self.g, self.p, self.N, tuple((a + b) % self.p for a, b in zip(self.values, other.values)))

    def scale(self, c: int) -> "ClassFunction":
        return ClassFunction(self.g, self.p, self.N, tuple(a * c % self.p for a in self.values))

    def __eq__(self, other) -> bool:
        if not isinstance(other, ClassFunction):
            return NotImplemented
        return self.g == other.g and self.p == other.p and self.N == other.N and self.values == other.values

    def __hash__(self) -> int:
        return hash((self.values, self.p, self.N))

    @property
    def degree(self) -> int:
        return self(self.g.id)

    def inner(self, other: "ClassFunction") -> int:
        """|G|^-1 sum_g f(g) h(g^-1)."""
        self._check(other)
        G, p = self.g, self.p
        s = sum(self(x) * other(G.inv[x]) for x in range(G.order))
        return s * pow(G.order, -1, p) % p

    def to_json(self) -> dict:
        return {
            "schema": "fibrum/classfunction/v1",
            "group": self.g.name,
            "p": self.p,
            "N": self.N,
            "classes": [list(c) for c in self.g.conjugacy_classes],
            "values": list(self.values),
        }


def induced_character(P: GroupTable, u: Sequence[int], phi: Sequence[int], N: int, p: int) -> tuple[int, ...]:
    """Values of Ind_U^P(zeta o phi) on the classes of P."""
    z = zeta(p, N)
    pows = [pow(z, a, p) for a in range(N)]
    val = dict(zip(u, phi))
    inv_u = pow(len(u), -1, p)
    out = []
    for cl in P.conjugacy_classes:
        g = cl[0]
        s = 0
        for x in range(P.order):
            c = P.conj(P.inv[x], g)
            if c in val:
                s += pows[val[c] % N]
        out.append(s * inv_u % p)
    return tuple(out)


def _pair_character(pair: FiberPair, p: int) -> tuple[GroupTable, tuple[int, ...]]:
    P = pair.g if pair.h.order == 1 else ambient(pair.g, pair.h).prod
    return P, induced_character(P, pair.u, pair.phi, pair.N, p)


@lru_cache(maxsize=100000)
def _pair_character_cached(pair: FiberPair, p: int) -> tuple[GroupTable, tuple[int, ...]]:
    return _pair_character(pair, p)


def linearize(x: FiberedElement | FiberPair, p: int | None = None) -> ClassFunction:
    """[U, phi] -> Ind_U^G(zeta o phi) for x in B^A(G) = B^A(G, 1); linear in x."""
    if isinstance(x, FiberPair):
        x = FiberedElement.basis(x)
    if x.h.order != 1:
        raise PreconditionError("linearize takes an element of B^A(G) = B^A(G, 1)")
    G, N = x.g, x.N
    p = character_prime([G], N) if p is None else p
    acc = np.zeros(len(G.conjugacy_classes), dtype=np.int64)
    for pair, c in x:
        _, vals = _pair_character_cached(pair, p)
        acc = (acc + _fp(c, p) * np.array(vals, dtype=np.int64)) % p
    return ClassFunction(G, p, N, tuple(int(v) for v in acc))


def pair_character(x: FiberedElement | FiberPair, p: int) -> tuple[GroupTable, list[int]]:
    """Linearization over G x H, as values per element of G x H."""
    if isinstance(x, FiberPair):
        x = FiberedElement.basis(x)
    P = x.g if x.h.order == 1 else ambient(x.g, x.h).prod
    acc = [0] * P.order
    for pair, c in x:
        _, vals = _pair_character_cached(pair, p)
        cf = _fp(c, p)
        for z in range(P.order):
            acc[z] = (acc[z] + cf * vals[P.class_index[z]]) % p
    return P, acc


def action_on_characters(x: FiberedElement | FiberPair, f: ClassFunction) -> ClassFunction:
    """g -> |H|^-1 sum_h chi(g, h) f(h), chi the linearization of x over G x H."""
    if isinstance(x, FiberPair):
        x = FiberedElement.basis(x)
    if x.h != f.g or x.N != f.N:
        raise PreconditionError("class function lives on the wrong group or modulus")
    G, H, p = x.g, x.h, f.p
    if G.order % p == 0:
        raise PreconditionError(f"p = {p} divides |G| = {G.order}")
    _, chi = pair_character(x, p)
    nh = H.order
    inv_h = pow(nh, -1, p)
    vals = []
    for cl in G.conjugacy_classes:
        g = cl[0]
        s = sum(chi[g * nh + h] * f(h) for h in range(nh))
        vals.append(s * inv_h % p)
    return ClassFunction(G, p, f.N, tuple(vals))


def lin_rank(G: GroupTable, N: int, p: int) -> int:
    """Rank over F_p of the induced characters of all basis elements of B^A(G)."""
    C1 = build_group("C1")
    rows = [linearize(b, p).values for b in standard_basis(G, C1, N)]
    return rank_mod_p(np.array(rows, dtype=np.int64), p)


# -- simplicity probe -------------------------------------------------------------


@dataclass(frozen=True)
class GroupProbe:
    group: str
    dim: int
    generated_rank: int      # rank of B^A(G,1) (x) F(1) -> F(G)
    evaluation_rank: int     # rank of F(G) -> prod over B^A(1,G) of F(1)

    @property
    def surjective(self) -> bool:
        return self.generated_rank == self.dim

    @property
    def kernel_zero(self) -> bool:
        return self.evaluation_rank == self.dim

    def to_json(self) -> dict:
        return {
            "group": self.group,
            "dim": self.dim,
            "generated_rank": self.generated_rank,
            "evaluation_rank": self.evaluation_rank,
            "surjective": self.surjective,
            "kernel_zero": self.kernel_zero,
        }


@dataclass(frozen=True)
class SimplicityReport:
    functor: str
    p: int
    N: int
    trivial_dim: int
    groups: tuple[GroupProbe, ...] = field(default_factory=tuple)

    @property
    def condition_i(self) -> bool:
        return self.trivial_dim == 1

    @property
    def condition_ii(self) -> bool:
        return all(g.surjective for g in self.groups)

    @property
    def condition_iii(self) -> bool:
        return all(g.kernel_zero for g in self.groups)

    @property
    def passes(self) -> bool:
        return self.condition_i and self.condition_ii and self.condition_iii

    def to_json(self) -> dict:
        return {
            "schema": "fibrum/simplicity-probe/v1",
            "functor": self.functor,
            "p": self.p,
            "N": self.N,
            "trivial_dim": self.trivial_dim,
            "conditions": {"i": self.condition_i, "ii": self.condition_ii, "iii": self.condition_iii},
            "groups": [g.to_json() for g in self.groups],
            "note": "finite probe over the listed groups, not a proof of simplicity",
        }


def _probe_character(G: GroupTable, N: int, p: int) -> GroupProbe:
    C1 = build_group("C1")
    one = ClassFunction.constant(C1, p, N)
    nc = len(G.conjugacy_classes)
    gen = [action_on_characters(b, one).values for b in standard_basis(G, C1, N)]
    evals = standard_basis(C1, G, N)
    pairing = [
        [action_on_characters(y, ClassFunction.indicator(G, p, N, i)).values[0] for i in range(nc)] for y in evals
    ]
    return GroupProbe(G.name, nc, rank_mod_p(np.array(gen), p), rank_mod_p(np.array(pairing), p))


def _trivial_coefficient(x: FiberedElement) -> int:
    """B^A(1,1) is free of rank one; the coefficient of its basis element."""
    terms = list(x)
    if len(terms) > 1:
        raise ConsistencyError("B^A(1,1) has a single basis element")
    return int(terms[0][1]) if terms else 0


def _probe_burnside(G: GroupTable, N: int, p: int) -> GroupProbe:
    C1 = build_group("C1")
    basis = standard_basis(G, C1, N)
    evals = standard_basis(C1, G, N)
    pairing = [
        [_trivial_coefficient(mackey_product(FiberedElement.basis(y), FiberedElement.basis(b))) for b in basis]
        for y in evals
    ]
    # B^A(-, 1) is generated by the identity of B^A(1, 1): each basis element b is b . 1
    gen = np.eye(len(basis), dtype=np.int64)
    return GroupProbe(G.name, len(basis), rank_mod_p(gen, p), rank_mod_p(np.array(pairing) % p, p))


def simplicity_probe(groups: Sequence[GroupTable], N: int, p: int | None = None, functor: str = "character") -> SimplicityReport:
    """Checks (i) dim F(1) = 1, (ii) F(G) generated by F(1), (iii) K_{F,1}(G) = 0 per group.

    ``character``: F(G) = class functions over F_p, acted on through linearization.
    ``burnside``: F(G) = F_p B^A(G).
    """
    if functor not in ("character", "burnside"):
        raise PreconditionError(f"unknown functor {functor!r}")
    gs = list(groups)
    if p is None:
        p = character_prime(gs, N)
    if functor == "character":
        for G in gs:
            zeta(p, N)
            if G.order % p == 0 or (p - 1) % G.exponent:
                raise PreconditionError(f"F_{p} is not a splitting field for {G.name}")
        probes = tuple(_probe_character(G, N, p) for G in gs)
    else:
        if not is_prime(p):
            raise PreconditionError(f"{p} is not prime")
        probes = tuple(_probe_burnside(G, N, p) for G in gs)
    return SimplicityReport(functor, p, N, 1, probes)


# -- the Burnside kernel element --------------------------------------------------


@dataclass(frozen=True)
class KernelCheck:
    p: int
    coefficients: dict          # subgroup order -> coefficient, summed per order
    element: FiberedElement
    pairings: tuple[int, ...]   # one per basis element of B(1, G)
    routes_agree: bool

    @property
    def nonzero(self) -> bool:
        return not self.element.is_zero()

    @property
    def annihilated(self) -> bool:
        return all(v == 0 for v in self.pairings)

    @property
    def passes(self) -> bool:
        return self.nonzero and self.annihilated and self.routes_agree

    def to_json(self) -> dict:
        return {
            "schema": "fibrum/burnside-kernel/v1",
            "p": self.p,
            "group": f"C{self.p}xC{self.p}",
            "coefficients_by_subgroup": [[list(u.u), c] for u, c in sorted(self.element, key=lambda t: t[0].key)],
            "pairings": list(self.pairings),
            "nonzero": self.nonzero,
            "annihilated": self.annihilated,
            "routes_agree": self.routes_agree,
        }


def burnside_kernel_check(p: int) -> KernelCheck:
    """p[G/G] - sum_i [G/H_i] + [G/1] in B(C_p x C_p), paired against every [Q\\G]."""
    if p not in (2, 3):
        raise PreconditionError("the kernel element is checked for p in {2, 3}")
    G = build_group(f"C{p}xC{p}")
    C1 = build_group("C1")
    basis = standard_basis(G, C1, 1)
    coeff = {1: 1, p: -1, p * p: p}
    x = FiberedElement.from_terms(G, C1, 1, [(b, coeff[len(b.u)]) for b in basis], ZZ)
    if sum(1 for b in basis if len(b.u) == p) != p + 1:
        raise ConsistencyError("C_p x C_p should have p + 1 subgroups of order p")
    pairings = []
    agree = True
    for y in standard_basis(C1, G, 1):
        Q = y.p2
        pairings.append(_trivial_coefficient(mackey_product(FiberedElement.basis(y), x)))
        direct = sum(c * len(double_coset_reps(G, b.p1, Q)) for b, c in x)
        agree &= direct == pairings[-1]
    return KernelCheck(p, dict(coeff), x, tuple(pairings), agree)


def kernel_vectors(G: GroupTable, N: int, p: int) -> np.ndarray:
    """Basis of K_{F,1}(G) for F = F_p B^A, in standard-basis coordinates."""
    C1 = build_group("C1")
    basis = standard_basis(G, C1, N)
    pairing = [
        [_trivial_coefficient(mackey_product(FiberedElement.basis(y), FiberedElement.basis(b))) for b in basis]
        for y in standard_basis(C1, G, N)
    ]
    return kernel_mod_p(np.array(pairing, dtype=np.int64).T, p)
