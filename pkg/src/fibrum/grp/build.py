from __future__ import annotations

import re
from functools import lru_cache
from itertools import permutations, product
from typing import Any, Callable, Hashable, Sequence

from ..errors import FormatError, PreconditionError
from .table import GroupTable


def from_elements(
    elements: Sequence[Hashable],
    op: Callable[[Any, Any], Any],
    name: str,
    label: Callable[[Any], str] = str,
) -> GroupTable:
    """Tabulate a group given as a list of elements (identity first) and a product."""
    index = {e: i for i, e in enumerate(elements)}
    if len(index) != len(elements):
        raise FormatError("duplicate elements")
    try:
        mul = tuple(tuple(index[op(a, b)] for b in elements) for a in elements)
    except KeyError as exc:
        raise FormatError("element set is not closed under the product") from exc
    return GroupTable(mul, tuple(label(e) for e in elements), name)


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise PreconditionError("cyclic order must be positive")
    labels = ["1"] + ["a" if k == 1 else f"a^{k}" for k in range(1, n)]
    mul = tuple(tuple((i + j) % n for j in range(n)) for i in range(n))
    return GroupTable(mul, tuple(labels), f"C{n}")


def dihedral(order: int) -> GroupTable:
    """Dihedral group of the given order 2n, elements r^k s^e."""
    if order < 2 or order % 2:
        raise PreconditionError("dihedral order must be even")
    n = order // 2
    els = [(k, e) for e in range(2) for k in range(n)]

    def op(a, b):
        return ((a[0] + (b[0] if a[1] == 0 else -b[0])) % n, (a[1] + b[1]) % 2)

    return from_elements(els, op, f"D{order}", lambda e: _word({"r": e[0], "s": e[1]}))


def dicyclic(order: int) -> GroupTable:
    """Dicyclic group of order 4n: a^(2n) = 1, x^2 = a^n, x a x^-1 = a^-1."""
    if order < 4 or order % 4:
        raise PreconditionError("dicyclic order must be a multiple of 4")
    n = order // 4
    m = 2 * n
    els = [(k, e) for e in range(2) for k in range(m)]

    def op(a, b):
        k1, e1 = a
        k2, e2 = b
        if e1 == 0:
            return ((k1 + k2) % m, e2)
        if e2 == 0:
            return ((k1 - k2) % m, 1)
        return ((k1 - k2 + n) % m, 0)

    name = "Q8" if order == 8 else ("Q16" if order == 16 else f"Dic{order}")
    return from_elements(els, op, name, lambda e: _word({"a": e[0], "x": e[1]}))


def quaternion(order: int = 8) -> GroupTable:
    if order not in (8, 16):
        raise PreconditionError("quaternion order must be 8 or 16")
    return dicyclic(order)


def abelian(*factors: int) -> GroupTable:
    factors = tuple(d for d in factors if d != 1) or (1,)
    els = list(product(*(range(d) for d in factors)))

    def op(a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, factors))

    name = "x".join(f"C{d}" for d in factors)
    return from_elements(els, op, name, lambda e: "(" + ",".join(map(str, e)) + ")")


def symmetric(n: int) -> GroupTable:
    if not 1 <= n <= 5:
        raise PreconditionError("symmetric groups are supported for n <= 5")
    els = sorted(permutations(range(n)))
    return from_elements(els, _compose, f"S{n}", _cycles)


def alternating(n: int = 4) -> GroupTable:
    if not 1 <= n <= 5:
        raise PreconditionError("alternating groups are supported for n <= 5")
    els = [p for p in sorted(permutations(range(n))) if _parity(p) == 0]
    return from_elements(els, _compose, f"A{n}", _cycles)


@lru_cache(maxsize=512)
def direct_product(G: GroupTable, H: GroupTable) -> GroupTable:
    """G x H with element (i, j) stored at index i*|H| + j."""
    nh = H.order
    gm, hm = G.mul, H.mul
    mul = tuple(
        tuple(gm[i1][i2] * nh + hm[j1][j2] for i2 in range(G.order) for j2 in range(nh))
        for i1 in range(G.order)
        for j1 in range(nh)
    )
    labels = tuple(f"({a},{b})" for a in G.labels for b in H.labels)
    return GroupTable(mul, labels, f"{G.name}x{H.name}", factors=(G, H))


def direct_product_many(*groups: GroupTable) -> GroupTable:
    out = groups[0]
    for g in groups[1:]:
        out = direct_product(out, g)
    return out


def from_cayley(doc: dict) -> GroupTable:
    try:
        mul = tuple(tuple(int(v) for v in row) for row in doc["mul"])
        order = int(doc.get("order", len(mul)))
        labels = tuple(str(s) for s in doc.get("labels", [str(i) for i in range(len(mul))]))
        name = str(doc.get("name", ""))
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed Cayley table document: {exc}") from exc
    if order != len(mul):
        raise FormatError("order does not match table size")
    if any(not 0 <= v < order for row in mul for v in row):
        raise FormatError("table entry out of range")
    return GroupTable(mul, labels, name).validate()


def to_cayley(G: GroupTable) -> dict:
    return {"name": G.name, "order": G.order, "mul": [list(r) for r in G.mul], "labels": list(G.labels)}


_FACTOR = re.compile(r"^(C|D|Q|S|A|Dic)(\d+)$")


def build_group(spec: str | dict) -> GroupTable:
    """Parse names such as ``C4``, ``D8``, ``Q8``, ``S3``, ``A4``, ``Dic12``,
    ``C2xC2``, ``C2^3`` or ``Ab(2,4)``, or load a Cayley-table dict."""
    if isinstance(spec, dict):
        return from_cayley(spec)
    text = spec.strip().replace(" ", "").replace("×", "x")
    if text.lower().startswith("ab(") and text.endswith(")"):
        return abelian(*(int(t) for t in text[3:-1].split(",") if t))
    parts = []
    for tok in text.split("x"):
        power = 1
        if "^" in tok:
            tok, p = tok.split("^")
            power = int(p)
        m = _FACTOR.match(tok)
        if not m:
            raise FormatError(f"unknown group name: {tok!r}")
        kind, n = m.group(1), int(m.group(2))
        g = {
            "C": cyclic,
            "D": dihedral,
            "Q": quaternion,
            "S": symmetric,
            "A": alternating,
            "Dic": dicyclic,
        }[kind](n)
        parts += [g] * power
    out = direct_product_many(*parts)
    if len(parts) > 1:
        names = [p.name for p in parts]
        out = GroupTable(out.mul, out.labels, "x".join(names), factors=out.factors)
    return out


def _compose(p, q):
    # (p o q)(i) = p(q(i))
    return tuple(p[i] for i in q)


def _parity(p) -> int:
    seen, par = set(), 0
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        par += length - 1
    return par % 2


def _cycles(p) -> str:
    seen, out = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j + 1))
            j = p[j]
        out.append("(" + " ".join(cyc) + ")")
    return "".join(out) or "()"


def _word(powers: dict[str, int]) -> str:
    out = []
    for s, k in powers.items():
        if k == 1:
            out.append(s)
        elif k:
            out.append(f"{s}^{k}")
    return "".join(out) or "1"
