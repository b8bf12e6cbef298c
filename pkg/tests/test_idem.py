import pytest

from fibrum.errors import PreconditionError
from fibrum.fib import FiberedElement, QQ
from fibrum.grp import center, homs_to_cyclic, normal_subgroups
from fibrum.idem import (
    central_pair,
    covering_algebra_report,
    covering_basis,
    delete_f_holds,
    e_element,
    ef_relation_failures,
    f_element,
    gamma_group,
    linkage_classes,
    linked_bruteforce,
    mgg_pairs,
    ses_report,
)


def faithful_center(G, N):
    Z = center(G).elems
    return next(cp for cp in mgg_pairs(G, N) if cp.k == Z and cp.is_faithful)


def brute_stable_count(G, N):
    n = 0
    for K in normal_subgroups(G):
        for chi in homs_to_cyclic(K, N):
            t = dict(zip(K.elems, chi.vals))
            n += all(t[G.conj(g, x)] == t[x] for g in range(G.order) for x in K.elems)
    return n


@pytest.mark.parametrize("name,N,count", [("C4", 2, 5), ("C2xC2", 2, 1 + 3 * 2 + 4), ("S3", 2, 1 + 1 + 2), ("Q8", 4, None), ("D8", 2, None)])
def test_mgg_pairs(g, name, N, count):
    G = g(name)
    pairs = mgg_pairs(G, N)
    assert len(pairs) == brute_stable_count(G, N)
    if count is not None:
        assert len(pairs) == count


def test_central_pair_validation(g):
    S3 = g("S3")
    t = next(x for x in range(6) if S3.element_orders[x] == 2)
    with pytest.raises(PreconditionError):
        central_pair(S3, [0, t], [0, 1], 2)
    C4 = g("C4")
    with pytest.raises(PreconditionError):
        central_pair(C4, [0, 1, 2, 3], [0, 1, 1, 1], 4)
    cp = central_pair(C4, [0, 2], [0, 1], 2)
    assert cp.is_faithful and cp.kernel == (0,)


@pytest.mark.parametrize("name,N", [("C4", 2), ("S3", 2), ("C2xC2", 2), ("Q8", 2)])
def test_e_f_relations(g, name, N):
    G = g(name)
    assert ef_relation_failures(G, N) == []
    pairs = mgg_pairs(G, N)
    total = FiberedElement.zero(G, G, N, QQ)
    for a in pairs:
        fa = f_element(a, QQ)
        assert fa * fa == fa
        total = total + fa
        ea = e_element(a, QQ)
        assert ea * ea == ea
    assert total == FiberedElement.identity(G, N, QQ)
    fs = [f_element(a, QQ) for a in pairs[:4]]
    for i, x in enumerate(fs):
        for y in fs[i + 1:]:
            assert (x * y).is_zero()


def test_delete_f(g):
    G = g("C4")
    assert all(delete_f_holds(p) for p in covering_basis(G, 2))


def test_linkage_classes_agree_with_brute_force(g):
    G = g("C2xC2")
    link = linkage_classes(G, 2)
    pairs = mgg_pairs(G, 2)
    for a in pairs:
        for b in pairs:
            assert link.linked(a, b) == linked_bruteforce(a, b)


@pytest.mark.parametrize("name,N", [("C4", 2), ("S3", 2), ("D8", 2)])
def test_covering_dimension_identity(g, name, N):
    r = covering_algebra_report(g(name), N)
    assert r.dimension_identity
    assert r.basis_size == sum(b.dim_expected for b in r.blocks)


def test_gamma_q8():
    from fibrum.grp import build_group, isomorphic

    cp = faithful_center(build_group("Q8"), 4)
    gam = gamma_group(cp)
    assert gam.order == 6
    assert isomorphic(gam.table, build_group("S3")) is not None


def test_iota_not_injective_for_q8(g):
    r = ses_report(faithful_center(g("Q8"), 4))
    assert (r.gamma_order, r.dual_order, r.image_order, len(r.twist)) == (6, 4, 6, 4)
    assert r.exact and not r.iota_injective and r.corrected_identity
    assert not r.order_identity


@pytest.mark.parametrize("name", ["C4", "C2xC2", "S3", "D8", "Q8"])
@pytest.mark.parametrize("N", [2, 4])
def test_corrected_order_identity(g, name, N):
    G = g(name)
    for cp in mgg_pairs(G, N):
        if cp.is_faithful:
            r = ses_report(cp)
            assert r.exact and r.corrected_identity
            if G.is_abelian:
                assert r.iota_injective and r.order_identity


def test_ses_needs_faithful(g):
    cp = next(c for c in mgg_pairs(g("C4"), 2) if not c.is_faithful)
    with pytest.raises(PreconditionError):
        ses_report(cp)
