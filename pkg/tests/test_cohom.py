import random
from itertools import product

import pytest

from fibrum.cohom import (
    alpha_1,
    alpha_n,
    commutator_product,
    full_decomposition,
    h2_group,
    linkage_via_cohomology,
    linkage_via_extension,
    reduced_criterion_hypothesis,
    squeeze,
)
from fibrum.errors import PreconditionError
from fibrum.fib import FiberedElement, standard_basis
from fibrum.grp import CocycleTable, FinAb, SubgroupRef, center, homs_to_cyclic, isomorphic, section_with_cocycle
from fibrum.idem import e_element, linked_bruteforce, mgg_pairs


def faithful_on(G, N, K):
    return next(cp for cp in mgg_pairs(G, N) if cp.k == tuple(sorted(K)) and cp.is_faithful)


def brute_h2_order(Q, m):
    """|Z^2| / |B^2| by enumeration, |B^2| = m^|Q| / |Hom(Q, Z/m)|."""
    n = Q.order
    z2 = 0
    for vals in product(range(m), repeat=n * n):
        f = lambda x, y: vals[x * n + y]
        if all(
            (f(y, w) - f(Q.mul[x][y], w) + f(x, Q.mul[y][w]) - f(x, y)) % m == 0
            for x in range(n) for y in range(n) for w in range(n)
        ):
            z2 += 1
    b2 = m**n // len(homs_to_cyclic(SubgroupRef.whole(Q), m))
    return z2 // b2


@pytest.mark.parametrize("name,m", [("C2", 2), ("C3", 3), ("C2", 4), ("C2", 3)])
def test_h2_matches_enumeration(g, name, m):
    assert h2_group(g(name), FinAb.cyclic(m)).order == brute_h2_order(g(name), m)


@pytest.mark.parametrize(
    "name,m,order",
    [("C4", 2, 2), ("C4", 4, 4), ("C6", 4, 2), ("C2xC2", 2, 8), ("C2xC2", 4, 8), ("S3", 2, 2), ("S3", 3, 1), ("Q8", 2, 4), ("D8", 2, 8), ("C1", 5, 1)],
)
def test_h2_orders(g, name, m, order):
    """Universal coefficients: |Ext(G^ab, Z/m)| |Hom(M(G), Z/m)|."""
    assert h2_group(g(name), FinAb.cyclic(m)).order == order


def test_h2_classify_is_additive(g):
    Q = g("C2xC2")
    b = FinAb.cyclic(2)
    H = h2_group(Q, b)
    gens = [c for c, _ in H.z2_basis()]
    for a in gens:
        for c in gens:
            assert H.classify(a + c) == H.add(H.classify(a), H.classify(c))
    mu = [(1,), (0,), (1,), (1,)]
    assert H.is_coboundary(CocycleTable.coboundary(Q, b, mu))


def test_alpha_1_measures_commutators(g):
    """sigma(s1) sigma(s2) sigma(s1)^-1 sigma(s2)^-1 = alpha_1(s1, s2) sigma([s1, s2])."""
    rng = random.Random(0)
    for name in ("Q8", "D8"):
        G = g(name)
        sc = section_with_cocycle(G, center(G))
        Q, sigma = sc.quotient, sc.section
        for _ in range(30):
            s = [rng.randrange(Q.order) for _ in range(4)]
            for n in (1, 2):
                lhs = commutator_product(G, [sigma[x] for x in s[: 2 * n]])
                k = sc.structure.from_vec[alpha_n(sc.alpha, n, s[: 2 * n])]
                assert lhs == G.mul[k][sigma[commutator_product(Q, s[: 2 * n])]]


def test_alpha_on_coboundary(g):
    Q, b = g("S3"), FinAb.cyclic(3)
    rng = random.Random(2)
    mu = [(rng.randrange(3),) for _ in range(Q.order)]
    a = CocycleTable.coboundary(Q, b, mu)
    for s in product(range(Q.order), repeat=2):
        assert alpha_1(a, *s) == b.neg(mu[commutator_product(Q, s)])


def test_alpha_argument_checks(g):
    a = CocycleTable.zero(g("C2"), FinAb.cyclic(2))
    with pytest.raises(PreconditionError):
        alpha_n(a, 0, [])
    with pytest.raises(PreconditionError):
        alpha_n(a, 2, [0, 1])


def test_squeeze_c4(g):
    C4 = g("C4")
    r = squeeze(faithful_on(C4, 4, C4.closure([2])))
    assert r.gt.order == 2 and isomorphic(r.gt, g("C2")) is not None
    assert r.k_tilde == (0,)


def test_squeeze_q8(g):
    Q8 = g("Q8")
    cp = faithful_on(Q8, 8, center(Q8).elems)
    r = squeeze(cp)
    assert any(isomorphic(r.gt, g(n)) is not None for n in ("D8", "Q8"))
    ins, dl = FiberedElement.basis(r.ins), FiberedElement.basis(r.delete)
    assert ins * dl == e_element(cp)
    assert dl * ins == e_element(r.cp_tilde)


def test_reduced_criterion_hypothesis(g):
    Q8, C4 = g("Q8"), g("C4")
    assert reduced_criterion_hypothesis(faithful_on(Q8, 8, center(Q8).elems))
    assert not reduced_criterion_hypothesis(faithful_on(C4, 4, C4.closure([2])))
    with pytest.raises(PreconditionError):
        reduced_criterion_hypothesis(faithful_on(Q8, 4, center(Q8).elems))


@pytest.mark.parametrize("N,linked", [(4, True), (2, False), (8, True)])
def test_q8_d8_linkage_three_routes(g, N, linked):
    Q8, D8 = g("Q8"), g("D8")
    a, b = faithful_on(Q8, N, center(Q8).elems), faithful_on(D8, N, center(D8).elems)
    assert linkage_via_cohomology(a, b).linked == linked
    assert linkage_via_extension(a, b) == linked
    assert linked_bruteforce(a, b) == linked


def test_linkage_is_symmetric_on_c4(g):
    C4, V = g("C4"), g("C2xC2")
    for a in mgg_pairs(C4, 4):
        for b in mgg_pairs(V, 4):
            v = linkage_via_cohomology(a, b).linked
            assert v == linkage_via_cohomology(b, a).linked == linked_bruteforce(a, b)


def test_full_decomposition_reassembles(g):
    rng = random.Random(5)
    G, H = g("C4"), g("C2")
    basis = standard_basis(G, H, 4)
    for p in rng.sample(basis, 8):
        d = full_decomposition(p)
        assert len(d.factors) == 7
        assert d.product() == FiberedElement.basis(p)


def test_full_decomposition_precondition(g):
    p = standard_basis(g("C4"), g("C2"), 2)[0]
    with pytest.raises(PreconditionError):
        full_decomposition(p)
