import json
from fractions import Fraction

import pytest

from fibrum.errors import FormatError
from fibrum.fib import QQ, FiberedElement, standard_basis
from fibrum.idem import mgg_pairs
from fibrum.lin import ClassFunction
from fibrum.serialize import (
    dump_central_pair,
    dump_class_function,
    dump_element,
    dump_group,
    dump_pair,
    dumps,
    load_central_pair,
    load_class_function,
    load_element,
    load_group,
    load_pair,
    loads,
)


def roundtrip(doc):
    return loads(dumps(doc))


def test_group_roundtrip(g):
    Q8 = g("Q8")
    H = load_group(roundtrip(dump_group(Q8)))
    assert H.mul == Q8.mul
    assert load_group("S3").order == 6


def test_pair_roundtrip(g):
    for p in standard_basis(g("C4"), g("C2"), 4):
        assert load_pair(roundtrip(dump_pair(p))) == p


def test_element_roundtrip(g):
    b = standard_basis(g("S3"), g("C2"), 2)
    x = FiberedElement.from_terms(b[0].g, b[0].h, 2, [(b[0], Fraction(1, 3)), (b[5], -2)], QQ)
    y = load_element(roundtrip(dump_element(x)))
    assert y == x and y.ring == QQ


def test_central_pair_and_class_function_roundtrip(g):
    cp = mgg_pairs(g("D8"), 4)[3]
    assert load_central_pair(roundtrip(dump_central_pair(cp))) == cp
    f = ClassFunction(g("S3"), 7, 6, (1, 2, 3))
    assert load_class_function(roundtrip(dump_class_function(f))) == f


def test_dumps_is_deterministic(g):
    p = standard_basis(g("C4"), g("C2"), 4)[3]
    assert dumps(dump_pair(p)) == dumps(json.loads(dumps(dump_pair(p))))


def test_format_errors(g):
    with pytest.raises(FormatError):
        loads("{not json")
    p = dump_pair(standard_basis(g("C2"), g("C1"), 2)[0])
    with pytest.raises(FormatError):
        load_element(p)
    del p["N"]
    with pytest.raises(FormatError):
        load_pair(p)
    with pytest.raises(FormatError):
        load_pair({"schema": "fibrum/pair/v1", "N": 2, "u": [[0, 0]]})
    with pytest.raises(FormatError):
        load_group(5)
