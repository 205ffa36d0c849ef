"""Blowing five points on a quadric up to a cubic surface, and back down.

Bidegree (d, d) forms on P^1 x P^1 are stored as (d+1, d+1) arrays whose
entry [i, j] is the coefficient of x0^i x1^(d-i) y0^j y1^(d-j).
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import linalg, permgrp
from .cubic.aut import AutGroup, is_isomorphic
from .cubic.form import MONOMIALS, CubicForm, cubic_from_coeffs
from .cubic.lines import SurfaceLines, find_lines, frobenius_line_perm
from .errors import (
    FieldMismatch,
    LineNotOnSurface,
    NoOrderFiveAction,
    NotGeneralPosition,
    NotInSubfield,
    RankFailure,
    UnexpectedInvariantCount,
)
from .gf2k import FieldSpec, embedding_table, restrict
from .proj import Projectivity, PluckerLine, wedge2
from .quadric import (
    QAut,
    QPoint,
    QuadricModel,
    _psi,
    is_general_position,
    point_index,
    qaut,
    qpoint,
    split,
    split_pairs,
    weil,
)


@dataclass(frozen=True)
class MarkedQuadric:
    model: QuadricModel
    pts: tuple[QPoint, ...]
    action: QAut | None = None     # the order-5 automorphism permuting pts, when known


def marked(model: QuadricModel, pts, action: QAut | None = None) -> MarkedQuadric:
    pts = tuple(pts)
    if len(pts) != 5 or not is_general_position(pts, model):
        raise NotGeneralPosition("five points in general position are required")
    return MarkedQuadric(model, pts, action)


# --- bidegree forms ----------------------------------------------------------------
def _binary_mul(a, b, F: FieldSpec) -> np.ndarray:
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, c in enumerate(a):
        if c:
            out[i:i + len(b)] ^= F.mul_arr(c, np.asarray(b, dtype=np.int64))
    return out


def _bimul(P, Q, F: FieldSpec) -> np.ndarray:
    P, Q = np.asarray(P), np.asarray(Q)
    out = np.zeros((P.shape[0] + Q.shape[0] - 1, P.shape[1] + Q.shape[1] - 1), dtype=np.int64)
    for (i, j), c in np.ndenumerate(P):
        if c:
            out[i:i + Q.shape[0], j:j + Q.shape[1]] ^= F.mul_arr(c, Q)
    return out


def _monomials22(X, F: FieldSpec) -> np.ndarray:
    """(n, 9) values of the bidegree (2,2) monomials at split points X (n, 2, 2)."""
    x0, x1, y0, y1 = X[:, 0, 0], X[:, 0, 1], X[:, 1, 0], X[:, 1, 1]
    xs = [F.mul_arr(x1, x1), F.mul_arr(x0, x1), F.mul_arr(x0, x0)]   # index = power of x0
    ys = [F.mul_arr(y1, y1), F.mul_arr(y0, y1), F.mul_arr(y0, y0)]
    return np.stack([F.mul_arr(xs[i], ys[j]) for i in range(3) for j in range(3)], axis=1)


def _theta(F: FieldSpec, L: FieldSpec) -> int:
    sub = set(embedding_table(F, L).tolist())
    return next(a for a in range(L.order) if a not in sub)


def _descent_sections(ker: np.ndarray, model: QuadricModel) -> np.ndarray:
    """Basis over the base field of the sections fixed by conjugate-and-swap.

    Each unknown c in L^9 is written u + v*theta with u, v in F, giving a
    linear system over F in 18 unknowns.
    """
    F, L = model.base, model.ext
    psi = _psi(model)
    th = _theta(F, L)
    denom = L.inv(th ^ int(psi[th]))

    def split_coords(x):
        # x = a + b*theta with a, b in F
        x = np.asarray(x, dtype=np.int64)
        b = L.mul_arr(x ^ psi[x], denom)
        return x ^ L.mul_arr(b, th), b

    basis = np.zeros((18, 9), dtype=np.int64)
    basis[np.arange(9), np.arange(9)] = 1
    basis[9 + np.arange(9), np.arange(9)] = th
    # kernel conditions: orthogonal to the annihilator of ker (the point conditions)
    ann = linalg.nullspace(ker, L)                     # rows a with a . c = 0 on ker
    cond = np.bitwise_xor.reduce(L.mul_arr(basis[:, None, :], ann[None, :, :]), axis=-1)  # (18, r)
    swap = basis.reshape(18, 3, 3).transpose(0, 2, 1).reshape(18, 9)
    tau = psi[swap] ^ basis                             # tau(c) - c
    rows = []
    for M in (cond.T, tau.T):
        a, b = split_coords(M)
        rows.extend([a, b])
    system = np.concatenate(rows)
    sol = linalg.nullspace(system, L)
    if len(sol) != 4:
        raise RankFailure(f"descent gives {len(sol)} sections, expected 4")
    return sol[:, :9] ^ L.mul_arr(sol[:, 9:], th)


def sections(mq: MarkedQuadric) -> np.ndarray:
    """(4, 3, 3) bidegree (2,2) forms through the marked points."""
    model = mq.model
    if not is_general_position(mq.pts, model):
        raise NotGeneralPosition("marked points are not in general position")
    X, W = split_pairs(mq.pts)
    E = _monomials22(X, W)
    ker = linalg.nullspace(E, W)
    if len(ker) != 4:
        raise RankFailure(f"point conditions leave {len(ker)} sections, expected 4")
    if model.kind == "weil":
        ker = _descent_sections(ker, model)
    return ker.reshape(4, 3, 3)


def blowup_to_cubic(mq: MarkedQuadric) -> CubicForm:
    """The cubic surface cut out by the image of the section map."""
    W = mq.model.work
    S = sections(mq)
    cols = []
    for e in MONOMIALS:
        P = np.ones((1, 1), dtype=np.int64)
        for v, k in enumerate(e):
            for _ in range(k):
                P = _bimul(P, S[v], W)
        cols.append(P.reshape(-1))
    M = np.stack(cols, axis=1)                      # (49, 20)
    ker = linalg.nullspace(M, W)
    if len(ker) != 1:
        raise RankFailure(f"the image satisfies {len(ker)} independent cubics, expected 1")
    coef = linalg.normalize_vec(ker[0], W)
    if mq.model.kind == "weil":
        try:
            coef = restrict(mq.model.base, W, coef)
        except NotInSubfield:
            raise RankFailure("descended cubic is not defined over the base field") from None
    return cubic_from_coeffs(coef, mq.model.base)


def _substitute22(S, A, B, swap: bool, F: FieldSpec) -> np.ndarray:
    """The form (x, y) -> S(A x, B y), with the slots exchanged when swap."""
    def powers(M):
        # linear forms as coefficient arrays indexed by the power of the first variable
        l0 = np.array([M[0, 1], M[0, 0]])
        l1 = np.array([M[1, 1], M[1, 0]])
        out = []
        for i in range(3):
            p = np.array([1])
            for _ in range(i):
                p = _binary_mul(p, l0, F)
            for _ in range(2 - i):
                p = _binary_mul(p, l1, F)
            out.append(p)
        return out

    if swap:
        # g(x, y) = (B y, A x): the x-slot of S is fed B y and the y-slot A x
        px, py = powers(np.asarray(B)), powers(np.asarray(A))
    else:
        px, py = powers(np.asarray(A)), powers(np.asarray(B))
    out = np.zeros((3, 3), dtype=np.int64)
    for (i, j), c in np.ndenumerate(S):
        if c:
            out ^= F.mul_arr(c, F.mul_arr(px[i][:, None], py[j][None, :]))
    return out.T if swap else out


def induced_projectivity(mq: MarkedQuadric, g: QAut) -> np.ndarray:
    """T with (section map) o g = T o (section map), over the working field."""
    W = mq.model.work
    S = sections(mq)
    if g.model.kind == "split":
        A, B = g.arrays()
    else:
        (A,) = g.arrays()
        B = _psi(g.model)[A]
    flat = S.reshape(4, 9)
    T = np.zeros((4, 4), dtype=np.int64)
    for i in range(4):
        img = _substitute22(S[i], A, B, g.flip, W).reshape(-1)
        sol = linalg.solve(flat.T, img, W)
        if sol is None:
            raise RankFailure("the automorphism does not preserve the linear system")
        T[i] = sol
    return linalg.normalize_vec(T.reshape(-1), W).reshape(4, 4)


# --- blowdown --------------------------------------------------------------------------
def order5_subgroup(aut: AutGroup) -> np.ndarray:
    """The five matrices of the subgroup generated by the first order-5 element."""
    orders = permgrp.perm_orders(aut.perms)
    hits = np.flatnonzero(orders == 5)
    if not len(hits):
        raise NoOrderFiveAction("the automorphism group has no element of order 5")
    g = aut.matrices[hits[0]]
    F = aut.cubic.spec
    out = [np.eye(4, dtype=np.int64)]
    for _ in range(4):
        out.append(linalg.normalize_vec(linalg.matmul(g, out[-1], F).reshape(-1), F).reshape(4, 4))
    return np.array(out)


def _generator(G, F: FieldSpec) -> np.ndarray:
    """A generator of G, given as one matrix or as the stack of its elements."""
    G = np.asarray(G.array() if isinstance(G, Projectivity) else G, dtype=np.int64)
    if G.ndim == 2:
        G = G[None]
    norm = linalg.normalize_rows(G.reshape(len(G), 16), F).reshape(-1, 4, 4)
    I = np.eye(4, dtype=np.int64)
    rest = [M for M in norm if not np.array_equal(M, I)]
    if len(G) not in (1, 5) or not rest:
        raise NoOrderFiveAction(f"a group of order 5 is required, got {len(G)} elements")
    g = rest[0]
    acc = g
    for _ in range(4):
        acc = linalg.normalize_vec(linalg.matmul(g, acc, F).reshape(-1), F).reshape(4, 4)
    if not np.array_equal(acc, I):
        raise NoOrderFiveAction("the generator does not have order 5")
    return g


def _line_perm(S: SurfaceLines, T) -> np.ndarray:
    L = S.ext
    T = embedding_table(S.base, L)[np.asarray(T)]
    img = linalg.normalize_rows(np.bitwise_xor.reduce(L.mul_arr(wedge2(T, L)[None], S.plucker[:, None, :]), axis=-1), L)
    idx = S.index()
    return np.array([idx[tuple(r)] for r in img.tolist()], dtype=np.int64)


def _pencil(rows, L: FieldSpec) -> tuple[np.ndarray, list[int]]:
    """RREF basis of the linear forms vanishing on a line, with pivot columns."""
    ann = linalg.nullspace(rows, L)
    _, piv = linalg.rref(ann, L)
    return ann, piv


def _pencil_param(ann, line_rows, L: FieldSpec) -> np.ndarray:
    """[lam:mu] with lam*a + mu*b vanishing on the given line."""
    vals = np.bitwise_xor.reduce(L.mul_arr(ann[:, None, :], line_rows[None, :, :]), axis=-1)  # (2, 2)
    for c in range(vals.shape[1]):
        a, b = int(vals[0, c]), int(vals[1, c])
        if a or b:
            return linalg.normalize_vec(np.array([b, a]), L)
    raise RankFailure("line lies inside every plane of the pencil")


def _pencil_action(ann, piv, T, L: FieldSpec) -> np.ndarray:
    """2x2 matrix acting on pencil parameters as T acts on points."""
    Tinv = linalg.inverse(T, L)
    N = linalg.matmul(ann, Tinv, L)[:, piv]
    return N.T


def blowdown_data(C: CubicForm, G) -> MarkedQuadric:
    """Contract the five common neighbours of the two lines fixed by G."""
    F = C.spec
    g = _generator(G, F)
    S = find_lines(C)
    L = S.ext
    perm = _line_perm(S, g)
    fixed = np.flatnonzero(perm == np.arange(27))
    if len(fixed) != 2 or S.graph[fixed[0], fixed[1]]:
        raise UnexpectedInvariantCount(f"expected two skew invariant lines, found {len(fixed)}")
    l1, l2 = (int(i) for i in fixed)
    quint = np.flatnonzero(S.graph[l1] & S.graph[l2])
    if len(quint) != 5:
        raise UnexpectedInvariantCount(f"{len(quint)} common neighbours")
    fr = frobenius_line_perm(S)
    if fr[l1] == l1 and fr[l2] == l2:
        model = split(F)
    elif fr[l1] == l2 and fr[l2] == l1:
        model = weil(F)
    else:
        raise UnexpectedInvariantCount("Frobenius moves the invariant pair")
    W = model.work
    if L.k % W.k:
        raise FieldMismatch(f"lines live over {L}, which does not contain {W}")
    ann1, piv1 = _pencil(S.rows[l1], L)
    if model.kind == "split":
        ann2, piv2 = _pencil(S.rows[l2], L)
    else:
        # the second pencil is the Galois conjugate of the first
        fL = L.frob_table(F.k)
        ann2 = fL[ann1]
        _, piv2 = linalg.rref(ann2, L)
    P = np.array([_pencil_param(ann1, S.rows[i], L) for i in quint])
    Q = np.array([_pencil_param(ann2, S.rows[i], L) for i in quint])
    gL = embedding_table(F, L)[g]
    N1 = _pencil_action(ann1, piv1, gL, L)
    N2 = _pencil_action(ann2, piv2, gL, L)
    # torus normalization: the first point with all coordinates nonzero goes to ([1:1],[1:1])
    first = next(i for i in range(5) if np.all(P[i]) and np.all(Q[i]))
    D1 = np.diag(L.inv_arr(P[first]))
    D2 = np.diag(L.inv_arr(Q[first]))
    P = linalg.normalize_rows(L.mul_arr(P, np.diag(D1)[None]), L)
    Q = linalg.normalize_rows(L.mul_arr(Q, np.diag(D2)[None]), L)
    N1 = linalg.matmul(linalg.matmul(D1, N1, L), linalg.inverse(D1, L), L)
    N2 = linalg.matmul(linalg.matmul(D2, N2, L), linalg.inverse(D2, L), L)
    try:
        if model.kind == "split":
            pts = [qpoint(model, restrict(W, L, p), restrict(W, L, q)) for p, q in zip(P, Q)]
            action = qaut(model, [restrict(W, L, N1), restrict(W, L, N2)])
        else:
            psiL = L.frob_table(F.k)
            if not np.array_equal(linalg.normalize_rows(psiL[P], L), Q):
                raise RankFailure("marked points are not defined over the base field")
            pts = [qpoint(model, restrict(W, L, p)) for p in P]
            action = qaut(model, [restrict(W, L, N1)])
    except NotInSubfield:
        raise RankFailure(f"marked points are not rational over {W}") from None
    pts.sort(key=point_index)
    return marked(model, pts, action)


# --- conic bundles ------------------------------------------------------------------------
def conic_fibers(C: CubicForm, l) -> list[tuple[int, int]]:
    """The five singular fibres of the conic bundle through a line, as index pairs."""
    S = find_lines(C)
    L = S.ext
    if isinstance(l, PluckerLine):
        vec = l.coords
        src = l.spec
    else:
        vec, src = l, S.base
    vec = np.asarray(vec, dtype=np.int64)
    if src != L:
        vec = embedding_table(src, L)[vec]
    key = tuple(int(x) for x in linalg.normalize_vec(vec, L))
    idx = S.index()
    if key not in idx:
        raise LineNotOnSurface("the line is not one of the 27")
    i = idx[key]
    nb = np.flatnonzero(S.graph[i])
    pairs = []
    for a in nb:
        partners = [b for b in nb if S.graph[a, b]]
        if len(partners) != 1:
            raise RankFailure("neighbours of a line do not pair up")
        b = partners[0]
        if a < b:
            plane = np.concatenate([S.rows[i], S.rows[a], S.rows[b]])
            if linalg.rank(plane, L) != 3:
                raise RankFailure("a fibre pair is not coplanar with the line")
            pairs.append((int(a), int(b)))
    return pairs


def roundtrip(C: CubicForm, G) -> bool:
    mq = blowdown_data(C, G)
    return is_isomorphic(blowup_to_cubic(mq), C) is not None
