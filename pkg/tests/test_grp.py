from collections import Counter
from itertools import product

import pytest

from fibrum.errors import FormatError, PreconditionError
from fibrum.grp import (
    SubgroupRef,
    automorphism_group,
    center,
    central_extension,
    characteristic_data,
    cyclic,
    derived_subgroup,
    direct_product,
    homs_to_cyclic,
    isomorphic,
    quaternion,
    quotient_group,
    section_with_cocycle,
    small_catalog,
    subgroup_lattice,
)
from fibrum.cohom import h2_group


def brute_subgroups(G):
    out = set()
    for mask in range(1, 1 << G.order):
        s = [x for x in range(G.order) if mask >> x & 1]
        if 0 in s and G.is_subgroup(s):
            out.add(tuple(s))
    return out


def test_cyclic4_has_generator_of_order_4():
    C4 = cyclic(4)
    assert C4.order == 4
    assert sorted(C4.element_orders) == [1, 2, 4, 4]


def test_klein_four_all_involutions(g):
    V = direct_product(cyclic(2), cyclic(2))
    assert V.order == 4 and all(V.element_orders[x] == 2 for x in range(1, 4))
    assert isomorphic(V, g("C2xC2")) is not None


def test_quaternion_element_orders():
    Q = quaternion(8)
    c = Counter(Q.element_orders)
    assert c == {1: 1, 2: 1, 4: 6}


@pytest.mark.parametrize("name", ["C4", "S3", "Q8", "D8", "A4", "C2xC2xC2"])
def test_tables_are_groups(g, name):
    g(name).validate(associativity=True)


def test_quotients(g):
    C4 = g("C4")
    Q, _ = quotient_group(C4, SubgroupRef(C4, C4.closure([x for x in range(4) if C4.element_orders[x] == 2])))
    assert Q.order == 2
    Q8 = g("Q8")
    V, _ = quotient_group(Q8, center(Q8))
    assert V.order == 4 and all(V.mul[x][x] == 0 for x in range(4))
    S3 = g("S3")
    A3 = derived_subgroup(S3)
    assert quotient_group(S3, A3)[0].order == 2


@pytest.mark.parametrize("name,count,normal", [("C2xC2", 5, 5), ("S3", 6, 3), ("C1", 1, 1), ("D8", 10, 6), ("Q8", 6, 6)])
def test_subgroup_lattice_matches_brute_force(g, name, count, normal):
    G = g(name)
    lat = subgroup_lattice(G)
    assert {tuple(s.elems) for s in lat.subgroups} == brute_subgroups(G)
    assert len(lat.subgroups) == count
    assert len(lat.normal_subgroups()) == normal


def test_s3_subgroup_classes(g):
    assert len(subgroup_lattice(g("S3")).class_representatives()) == 4


def test_characteristic_data(g):
    Q8 = g("Q8")
    d = characteristic_data(Q8)
    assert center(Q8).order == 2 and derived_subgroup(Q8).order == 2
    ab, _ = quotient_group(Q8, derived_subgroup(Q8))
    assert isomorphic(ab, g("C2xC2")) is not None
    C6 = g("C6")
    assert center(C6).order == 6 and derived_subgroup(C6).order == 1
    S3 = g("S3")
    assert center(S3).order == 1 and derived_subgroup(S3).order == 3
    assert d is not None


def brute_hom_count(G, N):
    gens = G.generators
    count = 0
    for imgs in product(range(N), repeat=len(gens)):
        vals = {0: 0}
        frontier = [0]
        ok = True
        while frontier and ok:
            x = frontier.pop()
            for s, v in zip(gens, imgs):
                y = G.mul[x][s]
                w = (vals[x] + v) % N
                if y in vals:
                    ok &= vals[y] == w
                else:
                    vals[y] = w
                    frontier.append(y)
        if ok and all(vals[G.mul[a][b]] == (vals[a] + vals[b]) % N for a in range(G.order) for b in range(G.order)):
            count += 1
    return count


@pytest.mark.parametrize("name,N,expected", [("C4", 2, 2), ("Q8", 4, 4), ("S3", 6, 2), ("D8", 1, 1), ("C6", 4, 2)])
def test_homs_to_cyclic(g, name, N, expected):
    G = g(name)
    homs = homs_to_cyclic(SubgroupRef.whole(G), N)
    assert len(homs) == expected == brute_hom_count(G, N)


@pytest.mark.parametrize("name,order", [("C4", 2), ("C2xC2", 6), ("C1", 1), ("Q8", 24), ("D8", 8), ("S3", 6)])
def test_automorphism_group_orders(g, name, order):
    assert automorphism_group(g(name)).group.order == order


def test_isomorphism(g):
    assert isomorphic(g("Q8"), g("D8")) is None
    G = g("S3")
    assert isomorphic(G, G) is not None
    assert isomorphic(g("C6"), direct_product(g("C2"), g("C3"))) is not None


def test_catalog():
    assert [G.name for G in small_catalog(4)] == ["C1", "C2", "C3", "C4", "C2xC2"]
    assert sum(1 for G in small_catalog(8) if G.order == 8) == 5
    assert [G.name for G in small_catalog(1)] == ["C1"]
    cat = small_catalog(15)
    counts = Counter(G.order for G in cat)
    assert [counts[n] for n in range(1, 16)] == [1, 1, 1, 2, 1, 2, 1, 5, 2, 2, 1, 5, 1, 2, 1]
    groups = list(cat)
    for i, a in enumerate(groups):
        for b in groups[i + 1:]:
            if a.order == b.order:
                assert isomorphic(a, b) is None


def test_catalog_override(tmp_path, monkeypatch, g):
    import json

    from fibrum.grp import to_cayley

    path = tmp_path / "cat.json"
    path.write_text(json.dumps([to_cayley(g("Q8"))]))
    monkeypatch.setenv("FIBRUM_CATALOG", str(path))
    assert len(small_catalog(8)) == 14


def test_section_cocycles(g):
    C4 = g("C4")
    sc = section_with_cocycle(C4, SubgroupRef(C4, (0, 2)))
    assert sc.alpha.is_cocycle()
    assert not h2_group(sc.quotient, sc.alpha.b).is_coboundary(sc.alpha)
    V = g("C2xC2")
    sv = section_with_cocycle(V, SubgroupRef(V, (0, 1)))
    assert h2_group(sv.quotient, sv.alpha.b).is_coboundary(sv.alpha)
    Q8 = g("Q8")
    sq = section_with_cocycle(Q8, center(Q8))
    assert not h2_group(sq.quotient, sq.alpha.b).is_coboundary(sq.alpha)
    # rebuilding from the cocycle gives back the group
    for G, sc_ in ((C4, sc), (Q8, sq)):
        assert isomorphic(central_extension(sc_.alpha), G) is not None


def test_bad_group_names():
    from fibrum.grp import build_group

    with pytest.raises(FormatError):
        build_group("Z7")
    with pytest.raises(FormatError):
        build_group({"mul": [[0, 1], [1, 5]]})
    with pytest.raises((FormatError, PreconditionError)):
        build_group({"mul": [[0, 1], [1, 1]]})
