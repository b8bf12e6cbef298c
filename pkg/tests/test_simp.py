import pytest

from fibrum.errors import PreconditionError
from fibrum.grp import center, small_catalog
from fibrum.idem import gamma_group, mgg_pairs
from fibrum.simp import (
    essential_basis,
    gamma_irreducibles,
    nonvanishing_filter,
    quadruple,
    quadruple_linkage,
    reduced_pairs_bruteforce,
    simple_evaluation,
    tilde_dimension,
)


def faithful_on(G, N, K):
    return next(cp for cp in mgg_pairs(G, N) if cp.k == tuple(sorted(K)) and cp.is_faithful)


def trivial_quadruple(g, N):
    return quadruple(mgg_pairs(g("C1"), N)[0])


def test_reduced_c4(g):
    C4 = g("C4")
    K = C4.closure([2])
    r2 = reduced_pairs_bruteforce(C4, 2)
    r4 = reduced_pairs_bruteforce(C4, 4)
    assert r2.is_reduced(faithful_on(C4, 2, K))
    f4 = r4.flag(faithful_on(C4, 4, K))
    assert not f4.reduced and f4.witness.h.order < 4 and f4.witness.is_covering
    assert r2.catalog_complete and r4.catalog_complete


def test_trivial_group_pair_is_reduced(g):
    assert all(f.reduced for f in reduced_pairs_bruteforce(g("C1"), 3).flags)


def test_reduced_matches_hypothesis_when_order_divides_n(g):
    from fibrum.cohom import reduced_criterion_hypothesis

    for name, N in (("C4", 4), ("C2xC2", 4), ("S3", 6), ("Q8", 8)):
        G = g(name)
        for f in reduced_pairs_bruteforce(G, N).flags:
            assert f.reduced == reduced_criterion_hypothesis(f.cp), (name, f.cp.label())


@pytest.mark.parametrize("name,N", [("C2", 2), ("S3", 6), ("C4", 4)])
def test_essential_dimension_formula(g, name, N):
    r = essential_basis(g(name), N)
    assert r.ideal_closed
    assert r.dim_ebar == r.dim_formula


@pytest.mark.parametrize("name", ["C2", "C3", "C4", "C2xC2", "S3"])
def test_trivial_simple_functor_counts_classes(g, name):
    G = g(name)
    q = trivial_quadruple(g, G.order)
    assert simple_evaluation(q, G) == len(G.conjugacy_classes)


@pytest.mark.parametrize("name", ["C1", "C2", "C3", "S3", "C4"])
def test_compressed_matches_full(g, name):
    q = trivial_quadruple(g, 6)
    H = g(name)
    assert simple_evaluation(q, H) == simple_evaluation(q, H, method="full")


def test_q8_simple_functor(g):
    Q8 = g("Q8")
    q = quadruple(faithful_on(Q8, 4, center(Q8).elems))
    assert simple_evaluation(q, Q8) == 1
    assert simple_evaluation(q, g("D8")) == 1
    assert simple_evaluation(q, Q8, method="full") == 1
    for H in small_catalog(7):
        assert simple_evaluation(q, H) == 0
    assert tilde_dimension(q) >= 1


def test_nonvanishing_filter_is_necessary(g):
    Q8 = g("Q8")
    cp = faithful_on(Q8, 4, center(Q8).elems)
    q = quadruple(cp)
    for H in small_catalog(8):
        if not nonvanishing_filter(cp, H):
            assert simple_evaluation(q, H) == 0


def test_gamma_irreducibles(g):
    Q8 = g("Q8")
    cp = faithful_on(Q8, 4, center(Q8).elems)
    gam = gamma_group(cp)
    mods, complete = gamma_irreducibles(gam, 73)
    assert [m.label for m in mods][0] == "trivial" and len(mods) == 2
    assert not complete
    C4 = g("C4")
    cp4 = mgg_pairs(C4, 4)[1]
    mods4, complete4 = gamma_irreducibles(gamma_group(cp4), 5)
    assert not gamma_irreducibles(gamma_group(mgg_pairs(C4, 4)[0]), 5)[1]
    assert complete4 and len(mods4) == gamma_group(cp4).order
    with pytest.raises(PreconditionError):
        gamma_irreducibles(gam, 3)


def test_quadruple_rejects_non_reduced(g):
    C4 = g("C4")
    with pytest.raises(PreconditionError):
        quadruple(faithful_on(C4, 4, C4.closure([2])))


def test_quadruple_linkage_q8_d8(g):
    Q8, D8 = g("Q8"), g("D8")
    a = quadruple(faithful_on(Q8, 4, center(Q8).elems))
    b = quadruple(faithful_on(D8, 4, center(D8).elems), p=a.module.p)
    assert quadruple_linkage(a, b)
    with pytest.raises(PreconditionError):
        quadruple_linkage(a, quadruple(faithful_on(D8, 4, center(D8).elems), p=a.module.p + 24))
