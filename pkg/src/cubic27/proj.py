"""Projective points, projectivities and Plücker lines over GF(2^k).

Plücker coordinates are ordered (01, 02, 03, 12, 13, 23).  In characteristic
2 every sign disappears: p_ij = p_i q_j + p_j q_i, the Plücker relation is
p01 p23 + p02 p13 + p03 p12 = 0, and two lines meet iff the symmetric
pairing below vanishes.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

import numpy as np

from . import linalg
from .errors import (
    Capacity,
    DegenerateFrame,
    EqualPoints,
    FieldMismatch,
    NoOrderFive,
    NotOrderFive,
)
from .gf2k import FieldSpec, field, quadratic_pair, restrict, smallest_fifth_root

PLUCKER_PAIRS = ((0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
# index of the complementary pair: 01<->23, 02<->13, 03<->12
_DUAL = np.array([5, 4, 3, 2, 1, 0])
PGL_ENUM_CAP = 10**7


def _tup(v) -> tuple[int, ...]:
    return tuple(int(x) for x in np.asarray(v).ravel())


@dataclass(frozen=True)
class ProjPoint:
    coords: tuple[int, ...]
    spec: FieldSpec

    def __repr__(self):
        return "[" + ":".join(self.spec.literal(c) for c in self.coords) + "]"


@dataclass(frozen=True)
class PluckerLine:
    p: tuple[int, ...]
    spec: FieldSpec

    def __repr__(self):
        return "<" + ",".join(self.spec.literal(c) for c in self.p) + ">"


@dataclass(frozen=True)
class Projectivity:
    matrix: tuple[tuple[int, ...], ...]
    spec: FieldSpec

    @property
    def n(self) -> int:
        return len(self.matrix)

    def array(self) -> np.ndarray:
        return np.array(self.matrix, dtype=np.int64)

    def __matmul__(self, other: "Projectivity") -> "Projectivity":
        _same(self.spec, other.spec)
        return projectivity(linalg.matmul(self.array(), other.array(), self.spec), self.spec)

    def inverse(self) -> "Projectivity":
        return projectivity(linalg.inverse(self.array(), self.spec), self.spec)

    def power(self, e: int) -> "Projectivity":
        out = projectivity(np.eye(self.n, dtype=np.int64), self.spec)
        for _ in range(e):
            out = out @ self
        return out

    def is_identity(self) -> bool:
        return self.matrix == tuple(tuple(int(i == j) for j in range(self.n)) for i in range(self.n))

    def __repr__(self):
        rows = ("[" + " ".join(self.spec.literal(c) for c in r) + "]" for r in self.matrix)
        return "Projectivity(" + " ".join(rows) + ")"


def _same(a: FieldSpec, b: FieldSpec):
    if a != b:
        raise FieldMismatch(f"{a} vs {b}")


# --- constructors ---------------------------------------------------------
def point(coords, F: FieldSpec) -> ProjPoint:
    return ProjPoint(_tup(linalg.normalize_vec(coords, F)), F)


def plucker_line(p, F: FieldSpec) -> PluckerLine:
    return PluckerLine(_tup(linalg.normalize_vec(p, F)), F)


def projectivity(M, F: FieldSpec) -> Projectivity:
    M = np.asarray(M, dtype=np.int64)
    if linalg.det(M, F) == 0:
        raise DegenerateFrame("matrix is not invertible")
    flat = linalg.normalize_vec(M.ravel(), F).reshape(M.shape)
    return Projectivity(tuple(_tup(r) for r in flat), F)


def identity(n: int, F: FieldSpec) -> Projectivity:
    return projectivity(np.eye(n, dtype=np.int64), F)


# --- array kernels used across modules --------------------------------------
def plucker_of(P, Q, F: FieldSpec) -> np.ndarray:
    """Unnormalized Plücker vectors for point arrays of shape (..., 4)."""
    P = np.asarray(P, dtype=np.int64)
    Q = np.asarray(Q, dtype=np.int64)
    out = [F.mul_arr(P[..., i], Q[..., j]) ^ F.mul_arr(P[..., j], Q[..., i]) for i, j in PLUCKER_PAIRS]
    return np.stack(out, axis=-1)


def meet_pairing(A, B, F: FieldSpec) -> np.ndarray:
    """Bilinear pairing of Plücker arrays, broadcasting over leading axes."""
    A = np.asarray(A, dtype=np.int64)
    B = np.asarray(B, dtype=np.int64)
    return np.bitwise_xor.reduce(F.mul_arr(A, B[..., _DUAL]), axis=-1)


def incidence_matrix(P, F: FieldSpec) -> np.ndarray:
    """Boolean n x n matrix of distinct lines that meet."""
    P = np.asarray(P, dtype=np.int64)
    G = meet_pairing(P[:, None, :], P[None, :, :], F) == 0
    np.fill_diagonal(G, False)
    return G


def wedge2(T, F: FieldSpec) -> np.ndarray:
    """6x6 matrix of the induced action on Plücker coordinates.

    Works on stacks of 4x4 matrices: shape (..., 4, 4) -> (..., 6, 6).
    """
    T = np.asarray(T, dtype=np.int64)
    I = np.array([p[0] for p in PLUCKER_PAIRS])
    J = np.array([p[1] for p in PLUCKER_PAIRS])
    Tik = T[..., I[:, None], I[None, :]]
    Tjl = T[..., J[:, None], J[None, :]]
    Til = T[..., I[:, None], J[None, :]]
    Tjk = T[..., J[:, None], I[None, :]]
    return F.mul_arr(Tik, Tjl) ^ F.mul_arr(Til, Tjk)


def plucker_relation(p, F: FieldSpec) -> np.ndarray:
    p = np.asarray(p, dtype=np.int64)
    return F.mul_arr(p[..., 0], p[..., 5]) ^ F.mul_arr(p[..., 1], p[..., 4]) ^ F.mul_arr(p[..., 2], p[..., 3])


# --- operations on values ---------------------------------------------------
def line_through(p: ProjPoint, q: ProjPoint) -> PluckerLine:
    _same(p.spec, q.spec)
    if len(p.coords) != 4 or len(q.coords) != 4:
        raise ValueError("line_through expects points of P^3")
    v = plucker_of(p.coords, q.coords, p.spec)
    if not np.any(v):
        raise EqualPoints(f"{p} and {q} coincide")
    return plucker_line(v, p.spec)


def lines_meet(l1: PluckerLine, l2: PluckerLine) -> bool:
    _same(l1.spec, l2.spec)
    return int(meet_pairing(l1.p, l2.p, l1.spec)) == 0


def apply(T: Projectivity, x):
    F = T.spec
    _same(F, x.spec)
    M = T.array()
    if isinstance(x, ProjPoint):
        return point(linalg.matvec(M, x.coords, F), F)
    if isinstance(x, PluckerLine):
        if T.n != 4:
            raise ValueError("lines need a 4x4 projectivity")
        return plucker_line(linalg.matvec(wedge2(M, F), x.p, F), F)
    raise TypeError(f"cannot apply a projectivity to {type(x).__name__}")


def frame_matrix(pts, F: FieldSpec) -> np.ndarray:
    """Matrix A with A e_i ~ P_i (i < n) and A (1,..,1) ~ P_n."""
    P = np.asarray(pts, dtype=np.int64)
    n = P.shape[1]
    if P.shape[0] != n + 1:
        raise DegenerateFrame(f"a frame of P^{n - 1} needs {n + 1} points")
    for sub in combinations(range(n + 1), n):
        if linalg.det(P[list(sub)], F) == 0:
            raise DegenerateFrame("frame points lie on a hyperplane")
    lam = linalg.solve(P[:n].T, P[n], F)
    return F.mul_arr(P[:n].T, lam[None, :])


def projectivity_from_frames(src, dst) -> Projectivity:
    F = src[0].spec
    for p in list(src) + list(dst):
        _same(F, p.spec)
    A = frame_matrix([p.coords for p in src], F)
    B = frame_matrix([p.coords for p in dst], F)
    return projectivity(linalg.matmul(B, linalg.inverse(A, F), F), F)


# --- PGL2 and its order-5 elements ------------------------------------------
def pgl2_order(F: FieldSpec) -> int:
    q = F.order
    return q * (q * q - 1)


def pgl2_elements(F: FieldSpec) -> np.ndarray:
    """All normalized invertible 2x2 matrices, shape (|PGL2|, 2, 2)."""
    if pgl2_order(F) > PGL_ENUM_CAP:
        raise Capacity(f"|PGL2({F})| exceeds {PGL_ENUM_CAP}")
    q = F.order
    e = np.arange(q, dtype=np.int64)
    # first nonzero entry (row-major) is 1: either a = 1, or a = 0 and b = 1
    b, c, d = (x.ravel() for x in np.meshgrid(e, e, e, indexing="ij"))
    top = np.stack([np.ones_like(b), b, c, d], axis=1)
    c2, d2 = (x.ravel() for x in np.meshgrid(e, e, indexing="ij"))
    low = np.stack([np.zeros_like(c2), np.ones_like(c2), c2, d2], axis=1)
    M = np.concatenate([top, low])
    det = F.mul_arr(M[:, 0], M[:, 3]) ^ F.mul_arr(M[:, 1], M[:, 2])
    return M[det != 0].reshape(-1, 2, 2)


def pgl2_normalize(M, F: FieldSpec) -> np.ndarray:
    M = np.asarray(M, dtype=np.int64)
    return linalg.normalize_rows(M.reshape(*M.shape[:-2], 4), F).reshape(M.shape)


def pgl2_power(M, e: int, F: FieldSpec) -> np.ndarray:
    out = np.broadcast_to(np.eye(2, dtype=np.int64), np.shape(M)).copy()
    for _ in range(e):
        out = linalg.matmul(out, M, F)
    return pgl2_normalize(out, F)


def order5_elements(F: FieldSpec) -> np.ndarray:
    M = pgl2_elements(F)
    I = np.array([[1, 0], [0, 1]])
    is_id = np.all(M == I, axis=(1, 2))
    five = np.all(pgl2_power(M, 5, F) == I, axis=(1, 2))
    return M[five & ~is_id]


def pgl2_order5_rep(F: FieldSpec) -> Projectivity:
    if F.k % 2:
        raise NoOrderFive(f"5 does not divide |PGL2({F})| = {pgl2_order(F)}")
    if F.k % 4 == 0:
        return projectivity([[1, 0], [0, smallest_fifth_root(F)]], F)
    # no fifth root here: take c from the quadratic extension, where it lies in F
    L = field(2 * F.k)
    c = int(restrict(F, L, [quadratic_pair(L)[0].bits])[0])
    return projectivity([[c, 1], [1, 0]], F)


def lift_to_order5(a: Projectivity) -> np.ndarray:
    F = a.spec
    M = a.array()
    if a.n != 2 or a.is_identity():
        raise NotOrderFive("expected a nontrivial element of PGL2")
    M5 = pgl2_power(M, 5, F)
    if not np.array_equal(M5, np.eye(2, dtype=np.int64)):
        raise NotOrderFive(f"{a} does not have order 5")
    E = np.eye(2, dtype=np.int64)
    for s in range(1, F.order):
        cand = F.mul_arr(M, s)
        P = cand
        for _ in range(4):
            P = linalg.matmul(P, cand, F)
        if np.array_equal(P, E):
            return cand
    raise NotOrderFive(f"{a} has no scalar lift of order 5")
