"""Smith normal form over the local rings Z/p^k (numpy int64, exact)."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ConsistencyError


@dataclass(frozen=True, eq=False)
class LocalSNF:
    """A T = S^-1 diag(p^e_0, p^e_1, ...) over Z/p^k.

    ``exps[i]`` is the valuation of the i-th diagonal entry (k for a zero entry,
    including every column beyond the rank). ``T`` and ``Tinv`` are the column
    transform and its inverse.
    """

    p: int
    k: int
    exps: tuple[int, ...]
    T: np.ndarray
    Tinv: np.ndarray

    @property
    def q(self) -> int:
        return self.p**self.k


def _valuations(sub: np.ndarray, p: int, k: int) -> np.ndarray:
    v = np.where(sub == 0, k, 0)
    t = sub.copy()
    for _ in range(k):
        m = (t != 0) & (t % p == 0)
        if not m.any():
            break
        v[m] += 1
        t[m] //= p
    return v


def snf_local(A, p: int, k: int) -> LocalSNF:
    """Smith form over Z/p^k by minimal-valuation pivoting.

    Row operations are applied but not recorded; only the column transform is
    needed for kernels and quotients.
    """
    q = p**k
    A = np.array(A, dtype=np.int64) % q
    if A.ndim != 2:
        raise ConsistencyError("snf_local needs a matrix")
    nrows, ncols = A.shape
    T = np.eye(ncols, dtype=np.int64)
    Tinv = np.eye(ncols, dtype=np.int64)
    exps: list[int] = []
    r = 0
    while r < min(nrows, ncols):
        sub = A[r:, r:]
        units = np.flatnonzero(sub % p)
        if units.size:
            flat, e = int(units[0]), 0
        else:
            val = _valuations(sub, p, k)
            flat = int(np.argmin(val))
            e = int(val.flat[flat])
        if e >= k:
            break
        i, j = divmod(flat, sub.shape[1])
        i += r
        j += r
        if i != r:
            A[[r, i]] = A[[i, r]]
        if j != r:
            A[:, [r, j]] = A[:, [j, r]]
            T[:, [r, j]] = T[:, [j, r]]
            Tinv[[r, j]] = Tinv[[j, r]]
        pe = p**e
        unit = int(A[r, r]) // pe
        uinv = pow(unit, -1, q)
        A[:, r] = A[:, r] * uinv % q
        T[:, r] = T[:, r] * uinv % q
        Tinv[r] = Tinv[r] * unit % q
        # rows below: every entry of the block is divisible by p^e
        col = A[r + 1 :, r] // pe
        nz = np.nonzero(col)[0]
        if nz.size:
            rows = r + 1 + nz
            A[rows] = (A[rows] - np.outer(col[nz], A[r])) % q
        row = A[r, r + 1 :] // pe
        nz = np.nonzero(row)[0]
        if nz.size:
            cols = r + 1 + nz
            s = row[nz]
            A[:, cols] = (A[:, cols] - np.outer(A[:, r], s)) % q
            T[:, cols] = (T[:, cols] - np.outer(T[:, r], s)) % q
            Tinv[r] = (Tinv[r] + s @ Tinv[cols]) % q
        exps.append(e)
        r += 1
    exps.extend([k] * (ncols - len(exps)))
    return LocalSNF(p, k, tuple(exps), T, Tinv)
