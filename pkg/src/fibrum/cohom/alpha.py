"""The commutator cocycle functions alpha_n attached to a 2-cocycle."""
from __future__ import annotations

from typing import Sequence

from ..errors import PreconditionError
from ..grp import CocycleTable, GroupTable

Vec = tuple[int, ...]


def commutator_product(Q: GroupTable, args: Sequence[int]) -> int:
    """[s1,s2][s3,s4]...[s_{2n-1},s_{2n}] with [a,b] = a b a^-1 b^-1."""
    if len(args) % 2:
        raise PreconditionError("commutator product needs an even number of arguments")
    out = 0
    for i in range(0, len(args), 2):
        out = Q.mul[out][Q.commutator(args[i], args[i + 1])]
    return out


def alpha_1(alpha: CocycleTable, s1: int, s2: int) -> Vec:
    Q, b = alpha.q, alpha.b
    m, inv = Q.mul, Q.inv
    c = m[inv[s1]][inv[s2]]
    out = b.sub(alpha(s1, s2), alpha(s2, s1))
    out = b.sub(out, alpha(m[s2][s1], c))
    out = b.add(out, alpha(m[s1][s2], c))
    return b.sub(out, alpha(0, 0))


def alpha_n(alpha: CocycleTable, n: int, args: Sequence[int]) -> Vec:
    """alpha_n(s_1, ..., s_{2n}) by the recursion over the last commutator."""
    if n < 1:
        raise PreconditionError("alpha_n needs n >= 1")
    if len(args) != 2 * n:
        raise PreconditionError(f"alpha_{n} takes {2 * n} arguments")
    Q, b = alpha.q, alpha.b
    out = alpha_1(alpha, args[0], args[1])
    for j in range(2, n + 1):
        head = args[: 2 * j - 2]
        last = args[2 * j - 2 : 2 * j]
        out = b.add(out, alpha_1(alpha, *last))
        out = b.add(out, alpha(commutator_product(Q, head), commutator_product(Q, last)))
    return out
