import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from fibrum.errors import FormatError, PreconditionError
from fibrum.fib import (
    GF,
    QQ,
    ZZ,
    FiberedElement,
    Ring,
    canonicalize,
    change_of_fiber,
    conjugate_pair,
    covering_filter,
    decompose_standard,
    identity_pair,
    ind,
    inf,
    deflation,
    make_pair,
    opposite,
    res,
    standard_basis,
    star_product,
)
from fibrum.grp import SubgroupRef, direct_product, homs_to_cyclic

SMALL = ["C1", "C2", "C3", "C4", "C2xC2", "S3"]


def orbit_count(G, H, N):
    """G x H-orbits of pairs (U, phi), computed by direct conjugation."""
    P = direct_product(G, H)
    subs = set()
    for mask in range(1, 1 << P.order):
        s = [x for x in range(P.order) if mask >> x & 1]
        if 0 in s and P.is_subgroup(s):
            subs.add(tuple(s))
    pairs = set()
    for U in subs:
        for chi in homs_to_cyclic(SubgroupRef(P, U), N):
            pairs.add(frozenset(zip(U, chi.vals)))
    seen, orbits = set(), 0
    for pr in pairs:
        if pr in seen:
            continue
        orbits += 1
        for z in range(P.order):
            zi = P.inv[z]
            seen.add(frozenset((P.mul[P.mul[z][x]][zi], v) for x, v in pr))
    return orbits


@pytest.mark.parametrize("gn,hn,N", [("C2", "C1", 2), ("C2", "C2", 2), ("C3", "C1", 3), ("S3", "C1", 6), ("C4", "C2", 4), ("C2xC2", "C1", 2), ("C3", "C2", 6)])
def test_standard_basis_size_matches_orbit_count(g, gn, hn, N):
    assert len(standard_basis(g(gn), g(hn), N)) == orbit_count(g(gn), g(hn), N)


def test_standard_basis_c2(g):
    assert len(standard_basis(g("C2"), g("C1"), 2)) == 3
    assert len(standard_basis(g("C1"), g("C1"), 5)) == 1


def test_canonicalize_is_conjugation_invariant(g):
    rng = random.Random(1)
    G, H = g("S3"), g("C2")
    P = direct_product(G, H)
    for p in standard_basis(G, H, 2):
        for _ in range(3):
            z = rng.randrange(P.order)
            assert canonicalize(conjugate_pair(p, z)) == p


def test_make_pair_validation(g):
    C2 = g("C2")
    with pytest.raises(PreconditionError):
        make_pair(C2, C2, 3, [(0, 0), (1, 0)], [0, 1])
    with pytest.raises(PreconditionError):
        make_pair(C2, C2, 2, [(0, 0), (1, 1), (1, 0)])
    with pytest.raises(PreconditionError):
        make_pair(C2, C2, 0, [(0, 0)])
    p = make_pair(C2, C2, 2, [(0, 0), (1, 1)], [0, 1])
    assert p.is_covering and p.k1 == (0,) and p.k2 == (0,)


def test_pair_projections(g):
    C4, C2 = g("C4"), g("C2")
    u = [(x, 0) for x in range(4)] + [(x, 1) for x in range(4)]
    p = make_pair(C4, C2, 4, u)
    assert p.p1 == (0, 1, 2, 3) and p.p2 == (0, 1)
    assert p.k1 == (0, 1, 2, 3) and p.k2 == (0, 1)


def test_star_product_identity_and_opposite(g):
    S3 = g("S3")
    for p in standard_basis(S3, g("C2"), 2)[:20]:
        assert star_product(identity_pair(S3, 2), p) == p
        assert opposite(opposite(p)) == p


def test_identity_element_is_neutral(g):
    G, H = g("C4"), g("C2")
    for p in standard_basis(G, H, 4):
        x = FiberedElement.basis(p)
        assert FiberedElement.identity(G, 4) * x == x
        assert x * FiberedElement.identity(H, 4) == x


def test_ind_res_mackey(g):
    """Res^G_H Ind^G_H 1 = sum over H\\G/H of conjugate inductions: for C2 <= S3 this is 1 + Ind_1^C2."""
    S3 = g("S3")
    C2 = SubgroupRef(S3, S3.closure([next(x for x in range(6) if S3.element_orders[x] == 2)]))
    i, r = FiberedElement.basis(ind(S3, C2, 1)), FiberedElement.basis(res(S3, C2, 1))
    rx = r * i
    assert sum(rx.terms.values()) == 2
    assert rx.coeff(identity_pair(rx.g, 1)) == 1


def test_deflation_inflation_is_identity(g):
    Q8 = g("Q8")
    Z = SubgroupRef(Q8, (0, next(x for x in range(8) if Q8.element_orders[x] == 2)))
    d, i = FiberedElement.basis(deflation(Q8, Z, 2)), FiberedElement.basis(inf(Q8, Z, 2))
    out = d * i
    assert out == FiberedElement.identity(out.g, 2)


def _random_element(rng, G, H, N, ring=ZZ):
    basis = standard_basis(G, H, N)
    return FiberedElement.from_terms(G, H, N, [(rng.choice(basis), rng.randint(-3, 3)) for _ in range(3)], ring)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from(["C1", "C2", "C3"]), st.sampled_from([1, 2, 6]))
def test_associativity(g, seed, a, b, c, N):
    rng = random.Random(seed)
    G, H, K, L = g(a), g(b), g(c), g("C2")
    x, y, z = _random_element(rng, G, H, N), _random_element(rng, H, K, N), _random_element(rng, K, L, N)
    assert (x * y) * z == x * (y * z)


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10**6), st.sampled_from(SMALL), st.sampled_from(SMALL), st.sampled_from(SMALL))
def test_opposite_reverses_products(g, seed, a, b, c):
    rng = random.Random(seed)
    x, y = _random_element(rng, g(a), g(b), 2), _random_element(rng, g(b), g(c), 2)
    assert (x * y).opposite() == y.opposite() * x.opposite()


@settings(max_examples=20, deadline=None)
@given(st.integers(0, 10**6))
def test_bilinearity(g, seed):
    rng = random.Random(seed)
    G, H, K = g("C4"), g("C2"), g("C2")
    x1, x2, y = _random_element(rng, G, H, 4), _random_element(rng, G, H, 4), _random_element(rng, H, K, 4)
    assert (x1 + x2) * y == x1 * y + x2 * y
    assert x1.scale(3) * y == (x1 * y).scale(3)


def test_change_of_fiber_is_multiplicative(g):
    rng = random.Random(3)
    G, H, K = g("C4"), g("C2"), g("C2")
    for _ in range(10):
        x, y = _random_element(rng, G, H, 2), _random_element(rng, H, K, 2)
        assert change_of_fiber(x * y, 4, 2) == change_of_fiber(x, 4, 2) * change_of_fiber(y, 4, 2)
    with pytest.raises(PreconditionError):
        change_of_fiber(x, 3, 1)


def test_rings():
    assert Ring.from_name("Q") == QQ and Ring.from_name("F7") == GF(7)
    assert GF(7).coerce(Fraction(1, 2)) == 4
    assert QQ.parse("3/4") == Fraction(3, 4)
    with pytest.raises(FormatError):
        Ring.from_name("R")
    with pytest.raises(PreconditionError):
        GF(9)
    with pytest.raises(PreconditionError):
        ZZ.coerce(Fraction(1, 2))


def test_ring_coefficients_in_products(g):
    C2 = g("C2")
    e = FiberedElement.basis(standard_basis(C2, C2, 1)[0], QQ, Fraction(1, 2))
    assert (e * e).ring == QQ
    with pytest.raises(PreconditionError):
        e + FiberedElement.basis(standard_basis(C2, C2, 1)[0])
    f = FiberedElement.basis(standard_basis(C2, C2, 1)[0], GF(3), 5)
    assert list(f)[0][1] == 2


def test_covering_filter(g):
    G, H = g("C4"), g("C2")
    cov = standard_basis(G, H, 2, covering_filter(G, H))
    assert cov and all(p.is_covering for p in cov)
    assert {p for p in standard_basis(G, H, 2) if p.is_covering} == set(cov)


@pytest.mark.parametrize("gn,hn,N", [("C4", "C2", 4), ("S3", "C2", 6), ("Q8", "C2", 8), ("C2xC2", "S3", 2)])
def test_five_factor_decomposition(g, gn, hn, N):
    for p in standard_basis(g(gn), g(hn), N)[::3]:
        d = decompose_standard(p)
        assert d.product() == FiberedElement.basis(p)
