"""Picard lattice of a split cubic surface and W(E6) acting on 27 classes.

Coordinates are (h, e1..e6) in the basis H, E1..E6 with pairing
diag(1, -1, ..., -1).  The 27 classes are ordered

    0..5    E1..E6
    6..20   L12, L13, ..., L56   (L_ij = H - E_i - E_j, lex order)
    21..26  Q1..Q6               (Q_i = 2H + E_i - sum E_j)
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations, product

import numpy as np

from . import permgrp
from .errors import NotInvolution, NotPairingPreserving
from .permgrp import GroupHandle

FORM = np.diag([1, -1, -1, -1, -1, -1, -1])
K = np.array([-3, 1, 1, 1, 1, 1, 1])
PAIRS = list(combinations(range(6), 2))


def class_names() -> list[str]:
    return ([f"E{i + 1}" for i in range(6)]
            + [f"L{i + 1}{j + 1}" for i, j in PAIRS]
            + [f"Q{i + 1}" for i in range(6)])


@lru_cache(maxsize=None)
def _classes() -> np.ndarray:
    rows = []
    for i in range(6):
        v = np.zeros(7, dtype=np.int64)
        v[1 + i] = 1
        rows.append(v)
    for i, j in PAIRS:
        v = np.zeros(7, dtype=np.int64)
        v[0] = 1
        v[1 + i] = v[1 + j] = -1
        rows.append(v)
    for i in range(6):
        v = -np.ones(7, dtype=np.int64)
        v[0] = 2
        v[1 + i] = 0
        rows.append(v)
    out = np.array(rows)
    out.setflags(write=False)
    return out


def standard_classes() -> np.ndarray:
    """(27, 7) integer array of class vectors."""
    return _classes()


def pairing(a, b) -> np.ndarray:
    a = np.asarray(a)
    b = np.asarray(b)
    return a[..., 0] * b[..., 0] - (a[..., 1:] * b[..., 1:]).sum(axis=-1)


@lru_cache(maxsize=None)
def class_pairing() -> np.ndarray:
    C = _classes()
    M = C @ FORM @ C.T
    M.setflags(write=False)
    return M


@lru_cache(maxsize=None)
def _roots() -> np.ndarray:
    out = []
    for v in product(range(-2, 3), repeat=7):
        v = np.array(v)
        if pairing(v, K) == 0 and pairing(v, v) == -2:
            out.append(v)
    R = np.array(out)
    R.setflags(write=False)
    return R


def roots() -> np.ndarray:
    return _roots()


def simple_roots() -> np.ndarray:
    rows = []
    for i in range(5):
        v = np.zeros(7, dtype=np.int64)
        v[1 + i], v[2 + i] = 1, -1
        rows.append(v)
    rows.append(np.array([1, -1, -1, -1, 0, 0, 0]))
    return np.array(rows)


def reflection_matrix(alpha) -> np.ndarray:
    """Matrix of x -> x + (x.alpha) alpha acting on column vectors."""
    alpha = np.asarray(alpha)
    return np.eye(7, dtype=np.int64) + np.outer(alpha, alpha @ FORM)


def lattice_to_perm(M) -> np.ndarray:
    C = _classes()
    img = C @ np.asarray(M).T
    index = {tuple(c): i for i, c in enumerate(C.tolist())}
    return np.array([index[tuple(r)] for r in img.tolist()], dtype=np.uint8)


def reflection_perms() -> np.ndarray:
    return np.array([lattice_to_perm(reflection_matrix(a)) for a in simple_roots()])


@lru_cache(maxsize=None)
def weyl_group() -> GroupHandle:
    return permgrp.closure(reflection_perms())


def perm_to_lattice(p) -> np.ndarray:
    """The lattice automorphism fixing K that sends class i to class p[i]."""
    p = np.asarray(p, dtype=np.int64)
    P = class_pairing()
    if not np.array_equal(P[np.ix_(p, p)], P):
        raise NotPairingPreserving("permutation does not preserve the class pairing")
    C = _classes()
    M = np.zeros((7, 7), dtype=np.int64)
    for i in range(6):
        M[:, 1 + i] = C[p[i]]
    # H = (-K + sum E_i) / 3 and K is fixed
    h3 = -K + M[:, 1:].sum(axis=1)
    if np.any(h3 % 3):
        raise NotPairingPreserving("image of H is not integral")
    M[:, 0] = h3 // 3
    if not np.array_equal(C @ M.T, C[p]):
        raise NotPairingPreserving("lattice map does not reproduce the permutation")
    return M


def perms_to_lattice(P) -> np.ndarray:
    """Vectorized perm_to_lattice for a stack known to lie in W(E6)."""
    P = np.asarray(P, dtype=np.int64)
    C = _classes()
    M = np.zeros((len(P), 7, 7), dtype=np.int64)
    M[:, :, 1:] = np.swapaxes(C[P[:, :6]], 1, 2)
    M[:, :, 0] = (-K + M[:, :, 1:].sum(axis=2)) // 3
    return M


def charpoly(M) -> np.ndarray:
    """Integer characteristic polynomials (highest degree first) by Faddeev-LeVerrier.

    Accepts a single matrix or a stack.
    """
    M = np.asarray(M, dtype=np.int64)
    single = M.ndim == 2
    M = M.reshape(-1, *M.shape[-2:])
    n = M.shape[-1]
    I = np.eye(n, dtype=np.int64)
    coeffs = np.zeros((len(M), n + 1), dtype=np.int64)
    coeffs[:, 0] = 1
    Mk = np.zeros_like(M)
    for k in range(1, n + 1):
        Mk = M @ Mk + coeffs[:, k - 1, None, None] * I
        tr = np.trace(M @ Mk, axis1=1, axis2=2)
        if np.any(tr % k):
            raise ArithmeticError("non-integral Faddeev-LeVerrier step")
        coeffs[:, k] = -tr // k
    return coeffs[0] if single else coeffs


def _polymul(*polys) -> np.ndarray:
    out = np.array([1])
    for p in polys:
        out = np.convolve(out, p)
    return out


_XM1 = np.array([1, -1])
_XP1 = np.array([1, 1])
_PHI5 = np.array([1, 1, 1, 1, 1])


def root_charpoly(M) -> np.ndarray:
    """Characteristic polynomial on the orthogonal complement of K."""
    full = charpoly(M)
    # synthetic division by (x - 1); K is always an eigenvector for 1
    single = full.ndim == 1
    full = np.atleast_2d(full)
    q = np.zeros((len(full), full.shape[1] - 1), dtype=np.int64)
    acc = np.zeros(len(full), dtype=np.int64)
    for i in range(full.shape[1] - 1):
        acc = acc + full[:, i]
        q[:, i] = acc
    rem = acc + full[:, -1]
    if np.any(rem):
        raise ArithmeticError("1 is not an eigenvalue")
    return q[0] if single else q


EXPECTED_CHARPOLY = {
    "identity": _polymul(*[_XM1] * 6),
    "A1": _polymul(*[_XM1] * 5, _XP1),
    "A1^2": _polymul(*[_XM1] * 4, _XP1, _XP1),
    "A1^3": _polymul(*[_XM1] * 3, *[_XP1] * 3),
    "A1^4": _polymul(*[_XM1] * 2, *[_XP1] * 4),
    "A4": _polymul(_XM1, _XM1, _PHI5),
    "A4xA1": _polymul(_XM1, _XP1, _PHI5),
}
_LABEL_ORDER = {"identity": 1, "A1": 2, "A1^2": 2, "A1^3": 2, "A1^4": 2, "A4": 5, "A4xA1": 10}


def _label(order: int, poly) -> str:
    for lab, want in EXPECTED_CHARPOLY.items():
        if _LABEL_ORDER[lab] == order and np.array_equal(poly, want):
            return lab
    return f"other({order})"


def classify(w) -> str:
    w = np.asarray(w)
    order = int(permgrp.perm_orders(w)[0])
    return _label(order, root_charpoly(perm_to_lattice(w)))


def classify_many(P) -> list[str]:
    P = np.asarray(P)
    orders = permgrp.perm_orders(P)
    polys = root_charpoly(perms_to_lattice(P))
    return [_label(int(o), p) for o, p in zip(orders, polys)]


def fixed_line_profile(w) -> tuple[int, int, int]:
    w = np.asarray(w, dtype=np.int64)
    if int(permgrp.perm_orders(w)[0]) != 2:
        raise NotInvolution("fixed_line_profile needs an element of order 2")
    idx = np.arange(27)
    fixed = int(np.sum(w == idx))
    moved = idx[(w != idx) & (idx < w)]
    P = class_pairing()
    meet = P[moved, w[moved]]
    return fixed, int(np.sum(meet == 0)), int(np.sum(meet == 1))


def class_census(G: GroupHandle | None = None) -> list[dict]:
    """Rows (label, size, centralizer order, order) for the classes of order 2, 5, 10.

    Raises if a conjugacy class mixes characteristic polynomials.
    """
    G = weyl_group() if G is None else G
    labels = permgrp.class_labels(G)
    orders = G.element_orders
    rows = []
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        o = int(orders[members[0]])
        if o not in (2, 5, 10):
            continue
        polys = root_charpoly(perms_to_lattice(G.elements[members]))
        if not np.all(polys == polys[0]):
            raise AssertionError("characteristic polynomial varies within a class")
        rep = G.elements[members[0]]
        cent = int(np.sum(permgrp.commutes_with(G.elements, rep)))
        if cent * len(members) != G.order:
            raise AssertionError("orbit-stabilizer fails")
        rows.append({"label": _label(o, polys[0]), "size": len(members),
                     "centralizer": cent, "order": o, "rep": rep})
    rows.sort(key=lambda r: (r["order"], r["size"]))
    return rows


def skew_pair_common_neighbours() -> set[int]:
    """Distinct counts of classes meeting both members of a skew pair."""
    P = class_pairing()
    counts = set()
    for i, j in combinations(range(27), 2):
        if P[i, j] == 0:
            counts.add(int(np.sum((P[i] == 1) & (P[j] == 1))))
    return counts


def line_stabilizer(G: GroupHandle, cls: int = 0) -> GroupHandle:
    E = G.elements
    return GroupHandle.from_elements(E[E[:, cls] == cls], degree=G.degree)
