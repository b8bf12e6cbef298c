import random

import pytest

from fibrum.errors import PreconditionError
from fibrum.fib import FiberedElement, identity_pair, ind, res, standard_basis
from fibrum.grp import SubgroupRef
from fibrum.lin import (
    ClassFunction,
    action_on_characters,
    burnside_kernel_check,
    character_prime,
    kernel_vectors,
    lin_rank,
    linearize,
    simplicity_probe,
    zeta,
)


def test_zeta_has_order_n():
    for p, N in ((13, 4), (13, 12), (73, 8)):
        z = zeta(p, N)
        assert pow(z, N, p) == 1 and all(pow(z, d, p) != 1 for d in range(1, N))
    with pytest.raises(PreconditionError):
        zeta(11, 4)


def test_character_prime(g):
    p = character_prime([g("S3"), g("C4")], 4)
    assert (p - 1) % 12 == 0 and p not in (2, 3)


def test_permutation_characters(g):
    """Trivial phi: Ind_U^G 1 counts fixed cosets of G/U."""
    G, C1 = g("S3"), g("C1")
    p = character_prime([G], 2)
    for b in standard_basis(G, C1, 2):
        if any(b.phi):
            continue
        U = set(b.u)
        cosets = {frozenset(G.mul[x][u] for u in U) for x in range(G.order)}
        want = [sum(1 for c in cosets if {G.mul[y][x] for x in c} == c) for y in range(G.order)]
        f = linearize(b, p)
        assert [f(y) for y in range(G.order)] == [w % p for w in want]


def test_linearize_is_linear(g):
    G, C1 = g("C4"), g("C1")
    b = standard_basis(G, C1, 4)
    x, y = FiberedElement.basis(b[1]), FiberedElement.basis(b[-1])
    p = 13
    assert linearize(x + y.scale(3), p) == linearize(x, p) + linearize(y, p).scale(3)


def test_linearize_needs_trivial_second_group(g):
    with pytest.raises(PreconditionError):
        linearize(standard_basis(g("C2"), g("C2"), 2)[0], 5)


@pytest.mark.parametrize("name,N", [("S3", 6), ("C4", 4), ("C2xC2", 2), ("Q8", 8)])
def test_linearization_surjects(g, name, N):
    G = g(name)
    assert lin_rank(G, N, character_prime([G], N)) == len(G.conjugacy_classes)


def test_identity_acts_trivially(g):
    G = g("S3")
    p = character_prime([G], 6)
    for i in range(3):
        f = ClassFunction.indicator(G, p, 6, i)
        assert action_on_characters(identity_pair(G, 6), f) == f


def test_ind_res_classical(g):
    G = g("S3")
    H = SubgroupRef(G, G.closure([next(x for x in range(6) if G.element_orders[x] == 3)]))
    p = character_prime([G], 3)
    Ht = ind(G, H, 3).h
    f = ClassFunction.from_elements(Ht, p, 3, [1, zeta(p, 3), zeta(p, 3) ** 2 % p])
    up = action_on_characters(ind(G, H, 3), f)
    # Ind of a nontrivial linear character of A3 is the 2-dim irreducible of S3
    assert up.degree == 2 and up.inner(up) == 1
    down = action_on_characters(res(G, H, 3), up)
    assert down.degree == 2


def test_action_is_functorial(g):
    rng = random.Random(4)
    names = ["C1", "C2", "C3", "S3"]
    N = 6
    p = character_prime([g(n) for n in names], N)
    for _ in range(15):
        G, H, K = (g(rng.choice(names)) for _ in range(3))
        x = FiberedElement.basis(rng.choice(standard_basis(G, H, N)))
        y = FiberedElement.basis(rng.choice(standard_basis(H, K, N)))
        f = ClassFunction(K, p, N, tuple(rng.randrange(p) for _ in K.conjugacy_classes))
        assert action_on_characters(x * y, f) == action_on_characters(x, action_on_characters(y, f))


def test_class_function_checks(g):
    S3 = g("S3")
    with pytest.raises(PreconditionError):
        ClassFunction(S3, 7, 6, (1, 2))
    with pytest.raises(PreconditionError):
        ClassFunction(S3, 3, 6, (1, 2, 3))
    with pytest.raises(PreconditionError):
        ClassFunction.from_elements(S3, 7, 6, list(range(6)))
    one = ClassFunction.constant(S3, 7, 6)
    assert one.inner(one) == 1


def test_character_probe_passes(g):
    r = simplicity_probe([g(n) for n in ("C2", "C3", "S3", "C4")], 12)
    assert r.condition_i and r.condition_ii and r.condition_iii and r.passes


def test_burnside_probe_fails_condition_iii(g):
    r = simplicity_probe([g("C2xC2")], 1, 5, functor="burnside")
    assert r.condition_ii and not r.condition_iii
    (probe,) = r.groups
    assert (probe.dim, probe.evaluation_rank) == (5, 4)
    assert kernel_vectors(g("C2xC2"), 1, 5).shape[0] == 1


def test_probe_rejects_bad_input(g):
    with pytest.raises(PreconditionError):
        simplicity_probe([g("S3")], 6, 5)
    with pytest.raises(PreconditionError):
        simplicity_probe([g("C2")], 2, functor="other")


@pytest.mark.parametrize("p", [2, 3])
def test_burnside_kernel(p):
    c = burnside_kernel_check(p)
    assert c.nonzero and c.annihilated and c.routes_agree
    assert c.coefficients == {1: 1, p: -1, p * p: p}


def test_burnside_kernel_range():
    with pytest.raises(PreconditionError):
        burnside_kernel_check(5)
