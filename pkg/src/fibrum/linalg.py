"""Small exact linear algebra: ranks over Q and F_p, kernels mod p."""
from __future__ import annotations

from math import gcd
from typing import Sequence

import numpy as np


def rank_q(rows: Sequence[Sequence[int]]) -> int:
    """Rank over Q of an integer matrix (fraction-free row reduction)."""
    mat = [list(map(int, r)) for r in rows if any(r)]
    if not mat:
        return 0
    ncols = len(mat[0])
    rank = 0
    for col in range(ncols):
        piv = next((i for i in range(rank, len(mat)) if mat[i][col]), None)
        if piv is None:
            continue
        mat[rank], mat[piv] = mat[piv], mat[rank]
        prow = mat[rank]
        a = prow[col]
        for i in range(rank + 1, len(mat)):
            b = mat[i][col]
            if b:
                row = [a * x - b * y for x, y in zip(mat[i], prow)]
                g = 0
                for x in row:
                    g = gcd(g, x)
                mat[i] = [x // g for x in row] if g > 1 else row
        rank += 1
        if rank == len(mat):
            break
    return rank


def _reduce_mod_p(mat: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form mod p; returns (matrix, pivot columns)."""
    m = mat.astype(np.int64) % p
    nrows, ncols = m.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            m[[r, i]] = m[[i, r]]
        m[r] = m[r] * pow(int(m[r, c]), -1, p) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m, pivots


def rank_mod_p(rows, p: int) -> int:
    mat = np.asarray(rows, dtype=np.int64)
    if mat.size == 0:
        return 0
    return len(_reduce_mod_p(mat, p)[1])


def kernel_mod_p(rows, p: int) -> np.ndarray:
    """Basis (as rows) of {x : M x = 0} over F_p."""
    mat = np.asarray(rows, dtype=np.int64)
    ncols = mat.shape[1]
    red, piv = _reduce_mod_p(mat, p)
    free = [c for c in range(ncols) if c not in set(piv)]
    basis = np.zeros((len(free), ncols), dtype=np.int64)
    for j, f in enumerate(free):
        basis[j, f] = 1
        for i, c in enumerate(piv):
            basis[j, c] = (-red[i, f]) % p
    return basis


def span_contains_mod_p(rows, vec, p: int) -> bool:
    base = rank_mod_p(rows, p) if len(rows) else 0
    return rank_mod_p(list(rows) + [list(vec)], p) == base


class SpanSolver:
    """Coordinates of vectors in the row span of ``M`` over F_p (rows independent)."""

    def __init__(self, rows, p: int):
        M = np.asarray(rows, dtype=np.int64) % p
        self.p = p
        self.rows = M
        n = M.shape[0]
        # reduce [M | I] to find x with x M = v through the pivot columns
        aug = np.concatenate([M, np.eye(n, dtype=np.int64)], axis=1)
        red, piv = _reduce_mod_p(aug, p)
        piv = [c for c in piv if c < M.shape[1]]
        if len(piv) != n:
            raise ValueError("rows are not independent mod p")
        self.piv = piv
        self.combo = red[:n, M.shape[1]:]   # row i of red = combo[i] @ M, with pivot at piv[i]

    def solve(self, v) -> np.ndarray | None:
        v = np.asarray(v, dtype=np.int64) % self.p
        x = v[self.piv] @ self.combo % self.p
        if not np.array_equal(x @ self.rows % self.p, v):
            return None
        return x


class QuotientReducer:
    """Coordinates in F_p^n / span(rel): reduce by the echelon form, keep the free columns."""

    def __init__(self, rel, n: int, p: int):
        rel = np.asarray(rel, dtype=np.int64).reshape(-1, n)
        self.p = p
        if rel.shape[0]:
            red, piv = _reduce_mod_p(rel, p)
            self.red = red[: len(piv)]
        else:
            piv = []
            self.red = np.zeros((0, n), dtype=np.int64)
        self.piv = piv
        self.free = [c for c in range(n) if c not in set(piv)]

    @property
    def dim(self) -> int:
        return len(self.free)

    def reduce(self, v) -> np.ndarray:
        v = np.asarray(v, dtype=np.int64) % self.p
        if len(self.piv):
            v = (v - v[self.piv] @ self.red) % self.p
        return v[self.free]
