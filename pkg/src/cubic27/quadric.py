"""Quadric surfaces of Picard rank 2 (split) and 1 (Weil restriction).

A point of P^1(F) is stored as an index: 0 is [0:1] and 1 + a is [1:a].
Split points are pairs of indices; Weil points are single indices into
P^1(L).  Automorphisms are

    split: (A, B, swap)   (p1, p2) -> (A p1, B p2), then exchanged if swap
    weil:  (A, twist)     P -> A P, then Galois-conjugated if twist

and base change sends a Weil point P to the split point (P, psi(P)), with
(A, twist) acting there as (A, psi(A), twist).
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

import numpy as np

from . import linalg, permgrp
from .errors import (
    Capacity,
    DuplicatePoints,
    FieldMismatch,
    NoOrderFive,
    ShortOrbit,
)
from .gf2k import FieldSpec, field, quadratic_pair, restrict, smallest_fifth_root
from .proj import frame_matrix, pgl2_elements, pgl2_normalize, pgl2_order, pgl2_order5_rep, pgl2_power

AUT_CAP = 10**7
POINT_CAP = 10**3


# --- P^1 helpers ----------------------------------------------------------------
def p1_coords(F: FieldSpec) -> np.ndarray:
    q = F.order
    out = np.zeros((q + 1, 2), dtype=np.int64)
    out[0] = (0, 1)
    out[1:, 0] = 1
    out[1:, 1] = np.arange(q)
    return out


def p1_index(P, F: FieldSpec) -> np.ndarray:
    P = np.asarray(P, dtype=np.int64)
    x0, x1 = P[..., 0], P[..., 1]
    safe = np.where(x0 == 0, 1, x0)
    return np.where(x0 == 0, 0, 1 + F.mul_arr(x1, F.inv_table[safe]))


def p1_action(M, F: FieldSpec) -> np.ndarray:
    """Permutations of P^1(F) induced by a stack of 2x2 matrices."""
    M = np.asarray(M, dtype=np.int64)
    X = p1_coords(F)
    img = np.bitwise_xor.reduce(F.mul_arr(M[..., None, :, :], X[:, None, :]), axis=-1)
    return p1_index(img, F)


def pgl2_from_points(src, dst, F: FieldSpec) -> np.ndarray | None:
    """The matrix sending three distinct points src[i] to dst[i], or None."""
    try:
        A = frame_matrix(src, F)
        B = frame_matrix(dst, F)
    except Exception:
        return None
    return pgl2_normalize(linalg.matmul(B, linalg.inverse(A, F), F), F)


# --- models ---------------------------------------------------------------------------
@dataclass(frozen=True)
class QuadricModel:
    kind: str                  # "split" or "weil"
    base: FieldSpec
    ext: FieldSpec | None = None

    def __post_init__(self):
        if self.kind not in ("split", "weil"):
            raise ValueError(f"unknown model kind {self.kind!r}")
        if self.kind == "weil" and (self.ext is None or self.ext.k != 2 * self.base.k):
            raise FieldMismatch("a Weil restriction needs a quadratic extension")

    @property
    def work(self) -> FieldSpec:
        """Field the point coordinates live in."""
        return self.base if self.kind == "split" else self.ext

    def __repr__(self):
        if self.kind == "split":
            return f"Split({self.base})"
        return f"Weil({self.base}/{self.ext})"


def split(F: FieldSpec) -> QuadricModel:
    return QuadricModel("split", F)


def weil(F: FieldSpec) -> QuadricModel:
    return QuadricModel("weil", F, field(2 * F.k))


@dataclass(frozen=True)
class QPoint:
    coords: tuple           # ((a0, a1), (b0, b1)) for split, ((a0, a1),) for weil
    model: QuadricModel

    def __repr__(self):
        lit = self.model.work.literal
        return "(" + ", ".join(f"[{lit(a)}:{lit(b)}]" for a, b in self.coords) + ")"


@dataclass(frozen=True)
class QAut:
    mats: tuple             # (A, B) for split, (A,) for weil; each a 2x2 tuple
    flip: bool              # swap for split, twist for weil
    model: QuadricModel

    def arrays(self) -> list[np.ndarray]:
        return [np.array(m, dtype=np.int64) for m in self.mats]


def _tup2(M) -> tuple:
    return tuple(tuple(int(x) for x in r) for r in np.asarray(M))


def qpoint(model: QuadricModel, *coords) -> QPoint:
    F = model.work
    norm = tuple(tuple(int(x) for x in linalg.normalize_vec(c, F)) for c in coords)
    want = 2 if model.kind == "split" else 1
    if len(norm) != want:
        raise ValueError(f"{model} points have {want} P^1 components")
    return QPoint(norm, model)


def qaut(model: QuadricModel, mats, flip: bool = False) -> QAut:
    F = model.work
    want = 2 if model.kind == "split" else 1
    if len(mats) != want:
        raise ValueError(f"{model} automorphisms carry {want} matrices")
    norm = []
    for M in mats:
        M = np.asarray(M, dtype=np.int64)
        if linalg.det(M, F) == 0:
            raise ValueError("singular matrix")
        norm.append(_tup2(pgl2_normalize(M, F)))
    return QAut(tuple(norm), bool(flip), model)


def identity_aut(model: QuadricModel) -> QAut:
    I = np.eye(2, dtype=np.int64)
    return qaut(model, [I] * (2 if model.kind == "split" else 1))


def _psi(model: QuadricModel) -> np.ndarray:
    """Table of the nontrivial automorphism of the extension over the base."""
    return model.ext.frob_table(model.base.k)


def act(g: QAut, p: QPoint) -> QPoint:
    if g.model != p.model:
        raise FieldMismatch(f"{g.model} vs {p.model}")
    F = g.model.work
    if g.model.kind == "split":
        A, B = g.arrays()
        a = linalg.matvec(A, p.coords[0], F)
        b = linalg.matvec(B, p.coords[1], F)
        return qpoint(g.model, *((b, a) if g.flip else (a, b)))
    (A,) = g.arrays()
    a = linalg.matvec(A, p.coords[0], F)
    if g.flip:
        a = _psi(g.model)[a]
    return qpoint(g.model, a)


def compose(g: QAut, h: QAut) -> QAut:
    """g after h."""
    if g.model != h.model:
        raise FieldMismatch(f"{g.model} vs {h.model}")
    F = g.model.work
    mm = lambda X, Y: linalg.matmul(X, Y, F)
    if g.model.kind == "split":
        A, B = g.arrays()
        C, D = h.arrays()
        if not h.flip:
            return qaut(g.model, [mm(A, C), mm(B, D)], g.flip)
        return qaut(g.model, [mm(B, C), mm(A, D)], not g.flip)
    (A,) = g.arrays()
    (C,) = h.arrays()
    if not h.flip:
        return qaut(g.model, [mm(A, C)], g.flip)
    return qaut(g.model, [mm(_psi(g.model)[A], C)], not g.flip)


def power(g: QAut, e: int) -> QAut:
    out = identity_aut(g.model)
    for _ in range(e):
        out = compose(g, out)
    return out


def points(model: QuadricModel) -> list[QPoint]:
    F = model.work
    n = (F.order + 1) ** (2 if model.kind == "split" else 1)
    if n > POINT_CAP:
        raise Capacity(f"{model} has {n} points, above the cap {POINT_CAP}")
    X = [tuple(int(v) for v in r) for r in p1_coords(F)]
    if model.kind == "split":
        return [QPoint((a, b), model) for a in X for b in X]
    return [QPoint((a,), model) for a in X]


def point_index(p: QPoint) -> int:
    F = p.model.work
    idx = [int(p1_index(c, F)) for c in p.coords]
    return idx[0] * (F.order + 1) + idx[1] if len(idx) == 2 else idx[0]


def point_from_index(model: QuadricModel, i: int) -> QPoint:
    F = model.work
    X = p1_coords(F)
    n = F.order + 1
    if model.kind == "split":
        return QPoint((tuple(int(v) for v in X[i // n]), tuple(int(v) for v in X[i % n])), model)
    return QPoint((tuple(int(v) for v in X[i]),), model)


# --- general position ------------------------------------------------------------------
def split_pairs(pts) -> tuple[np.ndarray, FieldSpec]:
    """Coordinates (5, 2, 2) on P^1 x P^1 over the working field, after base change."""
    model = pts[0].model
    F = model.work
    if model.kind == "split":
        return np.array([p.coords for p in pts], dtype=np.int64), F
    psi = _psi(model)
    return np.array([[p.coords[0], psi[np.array(p.coords[0])]] for p in pts], dtype=np.int64), F


def _gp_arrays(X, F: FieldSpec) -> bool:
    A = linalg.normalize_rows(X[:, 0], F)
    B = linalg.normalize_rows(X[:, 1], F)
    n = len(X)
    for i, j in combinations(range(n), 2):
        if np.array_equal(A[i], A[j]) or np.array_equal(B[i], B[j]):
            return False
    # bidegree (1,1) monomials x0 y0, x0 y1, x1 y0, x1 y1
    mono = np.stack([F.mul_arr(A[:, a], B[:, b]) for a in (0, 1) for b in (0, 1)], axis=1)
    for sub in combinations(range(n), 4):
        if linalg.det(mono[list(sub)], F) == 0:
            return False
    return True


def is_general_position(pts, model: QuadricModel | None = None) -> bool:
    pts = list(pts)
    model = pts[0].model if model is None else model
    if any(p.model != model for p in pts):
        raise FieldMismatch("points from different models")
    if len(set(pts)) != len(pts):
        raise DuplicatePoints("repeated point")
    X, F = split_pairs(pts)
    return _gp_arrays(X, F)


# --- order-5 actions ---------------------------------------------------------------------
def order5_matrix(F: FieldSpec) -> np.ndarray:
    """diag(1, xi) when F has a fifth root xi, else the companion form [[c,1],[1,0]]."""
    return pgl2_order5_rep(F).array()


def _companion_constants(F: FieldSpec) -> tuple[int, int]:
    L = field(2 * F.k)
    c1, c2 = quadratic_pair(L)
    r = restrict(F, L, [c1.bits, c2.bits])
    return int(r[0]), int(r[1])


def order5_reps(model: QuadricModel) -> list[QAut]:
    F = model.work
    if model.kind == "weil":
        return [qaut(model, [order5_matrix(F)])]
    if F.k % 2:
        raise NoOrderFive(f"5 does not divide |Aut({model})|")
    if F.k % 4 == 0:
        xi = smallest_fifth_root(F)
        d = lambda e: np.array([[1, 0], [0, F.pow(xi, e)]], dtype=np.int64)
        return [qaut(model, [d(1), d(j)]) for j in (2, 3, 4)]
    c, c2 = _companion_constants(F)
    comp = lambda a: np.array([[a, 1], [1, 0]], dtype=np.int64)
    return [qaut(model, [comp(c), comp(c2)]), qaut(model, [comp(c2), comp(c)])]


def orbit_of(g: QAut, p: QPoint) -> list[QPoint]:
    orbit = [p]
    for _ in range(4):
        orbit.append(act(g, orbit[-1]))
    if act(g, orbit[-1]) != p or len(set(orbit)) != 5:
        raise ShortOrbit(f"{p} does not have an orbit of length 5")
    return orbit


# --- automorphism tables on points (small models) ------------------------------------------
def aut_order(model: QuadricModel) -> int:
    n = pgl2_order(model.work)
    return 2 * n * n if model.kind == "split" else 2 * n


def point_perm_table(model: QuadricModel) -> np.ndarray:
    """Every automorphism as a permutation of the point indices."""
    if aut_order(model) > AUT_CAP:
        raise Capacity(f"|Aut({model})| = {aut_order(model)} exceeds {AUT_CAP}")
    F = model.work
    n = F.order + 1
    M = pgl2_elements(F)
    P = p1_action(M, F)                       # (m, n)
    if model.kind == "split":
        i = np.arange(n * n) // n
        j = np.arange(n * n) % n
        a = P[:, None, i]                     # (m, 1, n^2)
        b = P[None, :, j]                     # (1, m, n^2)
        straight = (a * n + b).reshape(-1, n * n)
        swapped = (b * n + a).reshape(-1, n * n)
        return np.concatenate([straight, swapped])
    psi_idx = p1_index(_psi(model)[p1_coords(F)], F)
    return np.concatenate([P, psi_idx[P]])


def _orbits_of_perm(p) -> list[tuple[int, ...]]:
    p = np.asarray(p)
    seen = np.zeros(len(p), dtype=bool)
    out = []
    for s in range(len(p)):
        if seen[s]:
            continue
        cyc = [s]
        seen[s] = True
        x = int(p[s])
        while x != s:
            cyc.append(x)
            seen[x] = True
            x = int(p[x])
        out.append(tuple(sorted(cyc)))
    return out


def general_position_orbits_full(model: QuadricModel) -> tuple[np.ndarray, list[tuple[int, ...]]]:
    """The point-permutation table and every 5-point orbit in general position."""
    T = point_perm_table(model)
    orders = permgrp.perm_orders(T)
    found = set()
    gp_cache: dict = {}
    for row in np.flatnonzero(orders == 5):
        for orb in _orbits_of_perm(T[row]):
            if len(orb) != 5 or orb in found:
                continue
            if orb not in gp_cache:
                pts = [point_from_index(model, i) for i in orb]
                gp_cache[orb] = is_general_position(pts, model)
            if gp_cache[orb]:
                found.add(orb)
    return T, sorted(found)


def canonical_form(T: np.ndarray, orb) -> tuple[int, ...]:
    """Smallest sorted image of an orbit over the whole group table."""
    img = np.sort(T[:, list(orb)], axis=1)
    best = img[np.lexsort(img.T[::-1])[0]]
    return tuple(int(x) for x in best)


# --- reduced route: generator types plus direct equivalence tests -----------------------------
def order5_types(model: QuadricModel) -> list[QAut]:
    """Generators covering every order-5 subgroup up to conjugacy."""
    F = model.work
    R = order5_matrix(F)
    if model.kind == "weil":
        return [qaut(model, [R])]
    I = np.eye(2, dtype=np.int64)
    out = [qaut(model, [I, R])]
    for j in range(5):
        out.append(qaut(model, [R, pgl2_power(R, j, F)]))
    return out


def orbits_of_aut(g: QAut) -> list[list[QPoint]]:
    """All 5-point orbits of an order-5 automorphism."""
    model = g.model
    F = model.work
    n = F.order + 1
    mats = g.arrays()
    P = [p1_action(M, F) for M in mats]
    if model.kind == "split":
        a, b = np.divmod(np.arange(n * n), n)
        perm = P[0][a] * n + P[1][b]
        if g.flip:
            perm = P[1][b] * n + P[0][a]
    else:
        perm = P[0]
        if g.flip:
            psi_idx = p1_index(_psi(model)[p1_coords(F)], F)
            perm = psi_idx[perm]
    return [[point_from_index(model, i) for i in orb] for orb in _orbits_of_perm(perm) if len(orb) == 5]


def equivalent(X, Y) -> bool:
    """True when some automorphism maps the 5-set X onto the 5-set Y.

    Tries all bijections; for each the (at most one) matrix per factor is
    fixed by three points and checked on the other two.
    """
    model = X[0].model
    F = model.work
    Xa = np.array([p.coords for p in X], dtype=np.int64)
    Ya = np.array([p.coords for p in Y], dtype=np.int64)
    psi = _psi(model) if model.kind == "weil" else None
    for perm in permutations(range(5)):
        Yp = Ya[list(perm)]
        for flip in (False, True):
            if model.kind == "split":
                # straight: A x1 -> y1, B x2 -> y2; swapped: A x1 -> y2, B x2 -> y1
                targets = (Yp[:, 0], Yp[:, 1]) if not flip else (Yp[:, 1], Yp[:, 0])
                ok = True
                for f in range(2):
                    M = pgl2_from_points(Xa[:3, f], targets[f][:3], F)
                    if M is None or not _maps_all(M, Xa[:, f], targets[f], F):
                        ok = False
                        break
                if ok:
                    return True
            else:
                tgt = Yp[:, 0] if not flip else psi[Yp[:, 0]]
                M = pgl2_from_points(Xa[:3, 0], tgt[:3], F)
                if M is not None and _maps_all(M, Xa[:, 0], tgt, F):
                    return True
    return False


def _maps_all(M, src, dst, F: FieldSpec) -> bool:
    img = linalg.normalize_rows(np.bitwise_xor.reduce(F.mul_arr(M[None], src[:, None, :]), axis=-1), F)
    return bool(np.all(img == linalg.normalize_rows(dst, F)))


def general_position_orbits_reduced(model: QuadricModel) -> list[list[QPoint]]:
    out, seen = [], set()
    for g in order5_types(model):
        for orb in orbits_of_aut(g):
            key = tuple(sorted(point_index(p) for p in orb))
            if key in seen:
                continue
            seen.add(key)
            if is_general_position(orb, model):
                out.append(orb)
    return out


def count_classes_by_equivalence(orbits) -> int:
    reps: list = []
    for orb in orbits:
        if not any(equivalent(r, orb) for r in reps):
            reps.append(orb)
    return len(reps)


def count_orbit_classes(model: QuadricModel, method: str = "auto") -> int:
    """Number of Aut-classes of general-position 5-point orbits of order-5 elements.

    ``full`` enumerates the group and compares canonical forms; ``reduced``
    uses conjugacy-class generator types and direct equivalence tests.
    ``auto`` picks ``full`` whenever the group fits under the cap.
    """
    if method == "auto":
        method = "full" if aut_order(model) <= AUT_CAP else "reduced"
    if model.kind == "split" and model.base.k % 2:
        return 0
    if method == "full":
        T, orbits = general_position_orbits_full(model)
        return len({canonical_form(T, o) for o in orbits})
    if method == "reduced":
        return count_classes_by_equivalence(general_position_orbits_reduced(model))
    raise ValueError(f"unknown method {method!r}")


def torus(model: QuadricModel, p: QPoint) -> QAut:
    """A diagonal automorphism sending ([1:1],[1:1]) (or [1:1]) to p."""
    mats = [np.diag(c) for c in p.coords]
    return qaut(model, mats)
