"""Dense linear algebra over GF(2^k) on int64 numpy arrays.

Reduction is deterministic: columns are scanned left to right and the first
row with a nonzero entry becomes the pivot row, so every echelon form and
kernel basis is reproducible bit for bit.
"""
from __future__ import annotations

import numpy as np

from .errors import ZeroInverse
from .gf2k import FieldSpec


def rref(M, F: FieldSpec) -> tuple[np.ndarray, list[int]]:
    A = np.array(M, dtype=np.int64, copy=True)
    if A.ndim != 2:
        raise ValueError("rref expects a 2-d array")
    rows, cols = A.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            A[[r, p]] = A[[p, r]]
        A[r] = F.mul_arr(A[r], F.inv(int(A[r, c])))
        col = A[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if len(hit):
            A[hit] ^= F.mul_arr(col[hit, None], A[r][None, :])
        pivots.append(c)
        r += 1
    return A, pivots


def rank(M, F: FieldSpec) -> int:
    return len(rref(M, F)[1])


def nullspace(M, F: FieldSpec) -> np.ndarray:
    """Kernel basis as rows, one per free column, in reduced echelon form."""
    A = np.asarray(M, dtype=np.int64)
    cols = A.shape[1]
    R, piv = rref(A, F)
    free = [c for c in range(cols) if c not in piv]
    basis = np.zeros((len(free), cols), dtype=np.int64)
    for i, f in enumerate(free):
        basis[i, f] = 1
        for r, p in enumerate(piv):
            basis[i, p] = R[r, f]  # char 2: -x == x
    if len(basis):
        basis = rref(basis, F)[0]
    return basis


def matmul(A, B, F: FieldSpec) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    prod = F.mul_arr(A[..., :, :, None], B[..., None, :, :])
    return np.bitwise_xor.reduce(prod, axis=-2)


def matvec(A, v, F: FieldSpec) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    v = np.asarray(v, dtype=np.int64)
    return np.bitwise_xor.reduce(F.mul_arr(A, v[..., None, :]), axis=-1)


def inverse(A, F: FieldSpec) -> np.ndarray:
    A = np.asarray(A, dtype=np.int64)
    n = A.shape[0]
    R, piv = rref(np.hstack([A, np.eye(n, dtype=np.int64)]), F)
    if piv[:n] != list(range(n)):
        raise ZeroInverse("singular matrix")
    return R[:, n:]


def det(A, F: FieldSpec) -> int:
    A = np.array(A, dtype=np.int64, copy=True)
    n = A.shape[0]
    d = 1
    for c in range(n):
        nz = np.nonzero(A[c:, c])[0]
        if len(nz) == 0:
            return 0
        p = c + int(nz[0])
        if p != c:
            A[[c, p]] = A[[p, c]]  # sign is irrelevant in char 2
        piv = int(A[c, c])
        d = F.mul(d, piv)
        ip = F.inv(piv)
        below = A[c + 1:, c]
        hit = np.nonzero(below)[0] + c + 1
        if len(hit):
            f = F.mul_arr(A[hit, c], ip)
            A[hit] ^= F.mul_arr(f[:, None], A[c][None, :])
    return d


def solve(A, b, F: FieldSpec) -> np.ndarray | None:
    """One solution of A x = b (free variables zero), or None."""
    A = np.asarray(A, dtype=np.int64)
    b = np.asarray(b, dtype=np.int64).reshape(-1, 1)
    n = A.shape[1]
    R, piv = rref(np.hstack([A, b]), F)
    if n in piv:
        return None
    x = np.zeros(n, dtype=np.int64)
    for r, p in enumerate(piv):
        x[p] = R[r, n]
    return x


def normalize_vec(v, F: FieldSpec) -> np.ndarray:
    """Scale so the first nonzero entry is 1."""
    v = np.asarray(v, dtype=np.int64)
    nz = np.flatnonzero(v)
    if len(nz) == 0:
        raise ValueError("zero vector has no normalization")
    return F.mul_arr(v, F.inv(int(v.flat[nz[0]])))


def normalize_rows(V, F: FieldSpec) -> np.ndarray:
    """Row-wise first-nonzero normalization; zero rows are left as zero."""
    V = np.asarray(V, dtype=np.int64)
    first = np.argmax(V != 0, axis=-1)
    lead = np.take_along_axis(V, first[..., None], axis=-1)
    lead = np.where(lead == 0, 1, lead)
    return F.mul_arr(V, F.inv_table[lead])
