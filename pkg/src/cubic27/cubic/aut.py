"""Automorphisms and isomorphisms of cubic surfaces through their 27 lines.

Every projectivity between smooth cubics permutes the lines, so candidates
come from isomorphisms of the intersection graphs.  A candidate fixes the
images of five intersection points in general position, which pins down at
most one projectivity; that matrix is then checked against the lines, the
equations and the base field.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import lcm

import numpy as np

from .. import _kernels, linalg, permgrp
from ..errors import FieldMismatch, FrameNotFound, SplitCap
from ..gf2k import field, restrict
from ..permgrp import GroupHandle
from ..proj import Projectivity, projectivity, wedge2
from .form import CubicForm, embed_coeffs, proportional, substitute
from .lines import SPLIT_CAP, SurfaceLines, find_lines, find_sixer, labels_from_sixer


# --- graph side ---------------------------------------------------------------------
def ordered_sixers(G) -> np.ndarray:
    """All ordered 6-tuples of pairwise disjoint lines, lexicographically sorted."""
    G = np.asarray(G, dtype=bool)
    n = len(G)
    tuples = np.arange(n)[:, None]
    for _ in range(5):
        bad = G[tuples].any(axis=1)
        bad[np.arange(len(tuples))[:, None], tuples] = True
        r, v = np.nonzero(~bad)
        tuples = np.concatenate([tuples[r], v[:, None]], axis=1)
    return tuples


def graph_isomorphisms(G1, G2) -> np.ndarray:
    """(N, 27) arrays s with G2[s][:, s] == G1, ordered by target sixer."""
    G1 = np.asarray(G1, dtype=bool)
    G2 = np.asarray(G2, dtype=bool)
    src = find_sixer(G1)
    if src is None:
        return np.zeros((0, len(G1)), dtype=np.int64)
    loc1 = labels_from_sixer(G1, src)
    T = ordered_sixers(G2)
    if loc1 is None or not len(T):
        return np.zeros((0, len(G1)), dtype=np.int64)
    bits = 1 << np.arange(6)
    sig = (G2[:, T].transpose(1, 0, 2) * bits).sum(axis=2)  # (N, 27)
    rows = np.arange(len(T))[:, None]
    sig[rows, T] = -1 - np.arange(6)
    sig1 = (G1[:, src] * bits).sum(axis=1)
    sig1[src] = -1 - np.arange(6)
    # target line whose signature matches each source line
    hit = sig[:, None, :] == sig1[None, :, None]
    ok = hit.sum(axis=2) == 1
    good = ok.all(axis=1)
    sigma = np.argmax(hit, axis=2)[good]
    adj = np.take_along_axis(G2[sigma], sigma[:, None, :].repeat(len(G1), axis=1), axis=2)
    keep = np.all(adj == G1, axis=(1, 2))
    return sigma[keep]


# --- intersection points and the frame --------------------------------------------
def intersection_points(S: SurfaceLines) -> np.ndarray:
    """(27, 27, 4) normalized meeting points; zero where lines are skew."""
    L = S.ext
    out = np.zeros((27, 27, 4), dtype=np.int64)
    for i, j in zip(*np.nonzero(np.triu(S.graph))):
        M = np.concatenate([S.rows[i], S.rows[j]]).T
        ker = linalg.nullspace(M, L)
        if len(ker) != 1:
            raise FrameNotFound(f"lines {i} and {j} do not meet in a single point")
        a, b = ker[0, 0], ker[0, 1]
        p = L.mul_arr(S.rows[i, 0], a) ^ L.mul_arr(S.rows[i, 1], b)
        out[i, j] = out[j, i] = linalg.normalize_vec(p, L)
    return out


def choose_frame(S: SurfaceLines, pts=None) -> list[tuple[int, int]]:
    """Lexicographically first five meeting points with no four coplanar."""
    L = S.ext
    pts = intersection_points(S) if pts is None else pts
    cands, seen = [], set()
    for i, j in zip(*np.nonzero(np.triu(S.graph))):
        key = tuple(pts[i, j])
        if key not in seen:
            seen.add(key)
            cands.append((int(i), int(j)))
    P = np.array([pts[i, j] for i, j in cands])

    def ok(chosen):
        new = chosen[-1]
        for a, b in combinations(chosen[:-1], 2):
            if linalg.rank(P[[a, b, new]], L) < 3:
                return False
        for trip in combinations(chosen[:-1], 3):
            if linalg.det(P[list(trip) + [new]], L) == 0:
                return False
        return True

    def extend(chosen):
        if len(chosen) == 5:
            return chosen
        start = chosen[-1] + 1 if chosen else 0
        for v in range(start, len(cands)):
            if ok(chosen + [v]):
                r = extend(chosen + [v])
                if r:
                    return r
        return None

    found = extend([])
    if found is None:
        raise FrameNotFound("no five meeting points in general position")
    return [cands[v] for v in found]


# --- transport -----------------------------------------------------------------------
@dataclass
class Transport:
    line_perms: np.ndarray   # (N, 27) line i of the source -> line of the target
    matrices: np.ndarray     # (N, 4, 4) normalized, over the splitting field
    in_base: np.ndarray      # (N,) entries lie in the base field


def transport(S1: SurfaceLines, S2: SurfaceLines) -> Transport:
    """All projectivities over the splitting field carrying S1 onto S2."""
    if S1.ext != S2.ext:
        raise FieldMismatch(f"{S1.ext} vs {S2.ext}")
    L = S1.ext
    sig = graph_isomorphisms(S1.graph, S2.graph)
    pts1 = intersection_points(S1)
    pts2 = pts1 if S2 is S1 else intersection_points(S2)
    frame = choose_frame(S1, pts1)
    I = np.array([f[0] for f in frame])
    J = np.array([f[1] for f in frame])
    A = _kernels.frame_solve(pts1[I, J][None], L)[0][0]
    Ainv = linalg.inverse(A, L)
    dst = pts2[sig[:, I], sig[:, J]]
    B, ok = _kernels.frame_solve(dst, L)
    sig, B = sig[ok], B[ok]
    T = linalg.normalize_rows(linalg.matmul(B, Ainv, L).reshape(-1, 16), L).reshape(-1, 4, 4)
    # T must carry every line i to line sig[i]
    img = np.bitwise_xor.reduce(L.mul_arr(wedge2(T, L)[:, None, :, :], S1.plucker[None, :, None, :]), axis=-1)
    img = linalg.normalize_rows(img, L)
    good = np.all(img == S2.plucker[sig], axis=(1, 2))
    sig, T = sig[good], T[good]
    # and the equation of S2 pulled back along T must be proportional to S1's
    c1 = embed_coeffs(S1.cubic, L)
    c2 = embed_coeffs(S2.cubic, L)
    pulled = substitute(c2, T, L)
    good = proportional(pulled, np.broadcast_to(c1, pulled.shape), L)
    sig, T = sig[good], T[good]
    fr = L.frob_table(S1.base.k)
    in_base = np.all(fr[T] == T, axis=(1, 2))
    return Transport(sig, T, in_base)


@dataclass
class AutGroup:
    cubic: CubicForm
    matrices: np.ndarray     # (N, 4, 4) over the base field
    perms: np.ndarray        # (N, 27) on class indices
    handle: GroupHandle
    label: str
    lines: SurfaceLines

    @property
    def order(self) -> int:
        return len(self.matrices)

    @property
    def elements(self) -> list[Projectivity]:
        return [projectivity(M, self.cubic.spec) for M in self.matrices]


def automorphisms(C: CubicForm) -> AutGroup:
    S = find_lines(C)
    tr = transport(S, S)
    ident = np.arange(27)
    # faithfulness: only the identity permutation gives the identity matrix
    is_id_mat = np.all(tr.matrices == np.eye(4, dtype=np.int64), axis=(1, 2))
    is_id_perm = np.all(tr.line_perms == ident, axis=1)
    if not np.array_equal(is_id_mat, is_id_perm) or is_id_mat.sum() != 1:
        raise AssertionError("line action is not faithful")
    if len(np.unique(tr.matrices.reshape(len(tr.matrices), -1), axis=0)) != len(tr.matrices):
        raise AssertionError("two line permutations produced the same projectivity")
    sig = tr.line_perms[tr.in_base]
    mats = restrict(C.spec, S.ext, tr.matrices[tr.in_base])
    perms = S.line_perm_to_class_perm(sig)
    handle = GroupHandle.from_elements(perms, degree=27)
    order = np.lexsort(perms.T[::-1])
    return AutGroup(C, mats[order], perms[order], handle, permgrp.identify_group(handle), S)


def geometric_automorphism_count(C: CubicForm) -> int:
    S = find_lines(C)
    return len(transport(S, S).matrices)


def is_isomorphic(C1: CubicForm, C2: CubicForm) -> Projectivity | None:
    """A projectivity T over the base field with C2(T x) ~ C1(x), or None."""
    if C1.spec != C2.spec:
        raise FieldMismatch(f"{C1.spec} vs {C2.spec}")
    m = lcm(find_lines(C1).m, find_lines(C2).m)
    if C1.spec.order**m > SPLIT_CAP:
        raise SplitCap(f"common splitting field GF({C1.spec.order}^{m}) is too large")
    S1, S2 = find_lines(C1, m), find_lines(C2, m)
    tr = transport(S1, S2)
    hits = np.flatnonzero(tr.in_base)
    if not len(hits):
        return None
    M = restrict(C1.spec, S1.ext, tr.matrices[hits[0]])
    return projectivity(M, C1.spec)


def maps_to(T, C1: CubicForm, C2: CubicForm) -> bool:
    """True when C2(T x) is a nonzero multiple of C1(x)."""
    if C1.spec != C2.spec:
        raise FieldMismatch(f"{C1.spec} vs {C2.spec}")
    F = C1.spec
    M = T.array() if isinstance(T, Projectivity) else np.asarray(T, dtype=np.int64)
    return bool(proportional(substitute(C2.array(), M, F), C1.array(), F)[0])


def gl4_oracle(C: CubicForm) -> np.ndarray:
    """Every invertible 4x4 matrix over GF(2) preserving C, by exhaustive scan."""
    F = C.spec
    if F.k != 1:
        raise ValueError("the exhaustive oracle only runs over GF(2)")
    bits = ((np.arange(1 << 16)[:, None] >> np.arange(16)) & 1).reshape(-1, 4, 4)
    pulled = substitute(C.array(), bits, F)
    keep = np.all(pulled == C.array(), axis=1)
    mats = bits[keep]
    dets = np.array([linalg.det(M, F) for M in mats], dtype=np.int64)
    mats = mats[dets != 0]
    return mats[np.lexsort(mats.reshape(len(mats), -1).T[::-1])]


def gl4_invertible_count() -> int:
    F = field(1)
    bits = ((np.arange(1 << 16)[:, None] >> np.arange(16)) & 1).reshape(-1, 4, 4)
    return int(sum(linalg.det(M, F) != 0 for M in bits))
