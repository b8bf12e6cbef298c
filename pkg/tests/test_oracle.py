import random

import numpy as np
import pytest

from fibrum.errors import ConsistencyError, ResourceError
from fibrum.fib import FiberedElement, mackey_pairs, standard_basis
from fibrum.oracle import classify_explicit, disjoint_union, oracle_product, realize, tensor_explicit


@pytest.mark.parametrize("gn,hn,N", [("C2", "C1", 2), ("S3", "C2", 2), ("C4", "C2", 4), ("C3", "C3", 3)])
def test_realize_size_and_classification(g, gn, hn, N):
    G, H = g(gn), g(hn)
    for p in standard_basis(G, H, N):
        X = realize(p)
        X.check()
        assert X.size == G.order * H.order * N // len(p.u)
        assert classify_explicit(X) == FiberedElement.basis(p)


def test_disjoint_union_classifies_to_sum(g):
    G, H = g("S3"), g("C1")
    b = standard_basis(G, H, 3)
    X = disjoint_union(realize(b[0]), realize(b[-1]))
    assert classify_explicit(X) == FiberedElement.basis(b[0]) + FiberedElement.basis(b[-1])


def test_check_detects_broken_action(g):
    p = standard_basis(g("C2"), g("C1"), 2)[0]
    X = realize(p)
    bad = type(X)(X.g, X.h, X.N, np.arange(X.size), X.g_act, X.h_act)
    with pytest.raises(ConsistencyError):
        bad.check()


def test_point_bound(g):
    p = standard_basis(g("S3"), g("S3"), 6)[0]
    with pytest.raises(ResourceError):
        realize(p, bound=10)


def test_tensor_with_identity(g):
    G = g("C4")
    one = [p for p in standard_basis(G, G, 2) if FiberedElement.basis(p) == FiberedElement.identity(G, 2)][0]
    for p in standard_basis(G, g("C2"), 2):
        assert classify_explicit(tensor_explicit(realize(one), realize(p))) == FiberedElement.basis(p)


def test_oracle_matches_mackey_sample(g):
    rng = random.Random(0)
    names = ["C2", "C3", "C4", "C2xC2", "S3"]
    for _ in range(40):
        G, H, K = (g(rng.choice(names)) for _ in range(3))
        N = rng.choice([2, 3, 4, 6])
        p = rng.choice(standard_basis(G, H, N))
        q = rng.choice(standard_basis(H, K, N))
        fast = FiberedElement.from_terms(G, K, N, [(r, 1) for r in mackey_pairs(p, q)])
        assert fast == oracle_product(p, q)
