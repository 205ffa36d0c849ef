"""Smoothness, the 27 lines and their labelling, and the Frobenius action."""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product

import numpy as np

from .. import _kernels, linalg, permgrp, picweyl
from ..errors import LabelingFailed, SingularSurface, SplitCap
from ..gf2k import FieldSpec, MAX_DEGREE, field
from ..proj import incidence_matrix, plucker_of
from .form import CubicForm, QUAD_EXPONENTS, embed_coeffs, eval_form, gradient, partials

SPLIT_CAP = 64
PIVOTS = [(i, j) for i in range(4) for j in range(i + 1, 4)]


@dataclass
class SurfaceLines:
    """The 27 lines of a cubic over GF(q^m), sorted by Plücker coordinates."""

    cubic: CubicForm
    m: int
    ext: FieldSpec
    plucker: np.ndarray          # (27, 6), normalized
    rows: np.ndarray             # (27, 2, 4), reduced echelon spanning points
    graph: np.ndarray            # (27, 27) bool, True when lines meet
    line_of_class: np.ndarray | None = None   # class index -> line index
    class_of_line: np.ndarray | None = None
    _cache: dict = dc_field(default_factory=dict, repr=False)

    @property
    def base(self) -> FieldSpec:
        return self.cubic.spec

    def index(self) -> dict:
        if "index" not in self._cache:
            self._cache["index"] = {tuple(r): i for i, r in enumerate(self.plucker.tolist())}
        return self._cache["index"]

    def line_perm_to_class_perm(self, p) -> np.ndarray:
        p = np.asarray(p)
        return self.class_of_line[p[..., self.line_of_class]].astype(np.uint8)

    def class_perm_to_line_perm(self, s) -> np.ndarray:
        s = np.asarray(s)
        return self.line_of_class[s[..., self.class_of_line]].astype(np.uint8)


def _chart_rows(i: int, free, L: FieldSpec) -> np.ndarray:
    n = len(free)
    vals = np.array(list(product(range(L.order), repeat=n)), dtype=np.int64).reshape(L.order**n, n)
    R = np.zeros((len(vals), 4), dtype=np.int64)
    R[:, i] = 1
    for k, c in enumerate(free):
        R[:, c] = vals[:, k]
    return R


def lines_over(C: CubicForm, m: int) -> tuple[np.ndarray, np.ndarray, FieldSpec]:
    """All lines on C defined over GF(q^m), via the six Schubert cells."""
    L = field(C.spec.k * m)
    coef = embed_coeffs(C, L)
    pl, rows = [], []
    for i, j in PIVOTS:
        R1 = _chart_rows(i, [c for c in range(i + 1, 4) if c != j], L)
        R2 = _chart_rows(j, list(range(j + 1, 4)), L)
        R1 = R1[eval_form(coef, R1, L) == 0]
        R2 = R2[eval_form(coef, R2, L) == 0]
        if not len(R1) or not len(R2):
            continue
        g1 = gradient(coef, R1, L)
        g2 = gradient(coef, R2, L)
        # F(sP + tQ) has s^2 t coefficient Q.grad F(P) and s t^2 coefficient P.grad F(Q)
        A = np.bitwise_xor.reduce(L.mul_arr(g1[:, None, :], R2[None, :, :]), axis=-1)
        B = np.bitwise_xor.reduce(L.mul_arr(R1[:, None, :], g2[None, :, :]), axis=-1)
        a, b = np.nonzero((A == 0) & (B == 0))
        for x, y in zip(a, b):
            rows.append(np.stack([R1[x], R2[y]]))
    if not rows:
        return np.zeros((0, 6), np.int64), np.zeros((0, 2, 4), np.int64), L
    rows = np.array(rows)
    pl = linalg.normalize_rows(plucker_of(rows[:, 0], rows[:, 1], L), L)
    order = np.lexsort(pl.T[::-1])
    return pl[order], rows[order], L


_lines_cache: dict = {}


def find_lines(C: CubicForm, m: int | None = None) -> SurfaceLines:
    """Lines over the smallest GF(q^m) holding all 27 (or over the given m)."""
    key = (C, m)
    if key in _lines_cache:
        return _lines_cache[key]
    q = C.spec.order
    ms = [m] if m is not None else [d for d in range(1, 13) if q**d <= SPLIT_CAP and C.spec.k * d <= MAX_DEGREE]
    for d in ms:
        pl, rows, L = lines_over(C, d)
        if len(pl) > 27:
            raise SingularSurface(f"{len(pl)} lines over {L}; the surface is not smooth")
        if len(pl) == 27:
            graph = incidence_matrix(pl, L)
            S = SurfaceLines(C, d, L, pl, rows, graph)
            label_lines(S)
            _lines_cache[key] = S
            return S
    raise SplitCap(f"fewer than 27 lines over every GF(q^m) with q^m <= {SPLIT_CAP}")


def find_sixer(graph) -> list[int] | None:
    """First 6 pairwise disjoint vertices in lexicographic backtracking order."""
    n = len(graph)

    def extend(chosen):
        if len(chosen) == 6:
            return chosen
        start = chosen[-1] + 1 if chosen else 0
        for v in range(start, n):
            if not any(graph[v, u] for u in chosen):
                r = extend(chosen + [v])
                if r:
                    return r
        return None

    return extend([])


def label_lines(S: SurfaceLines) -> SurfaceLines:
    G = S.graph
    sixer = find_sixer(G)
    if sixer is None:
        raise LabelingFailed("no six pairwise skew lines")
    line_of_class = labels_from_sixer(G, sixer)
    if line_of_class is None:
        raise LabelingFailed("adjacency pattern does not match the standard classes")
    S.line_of_class = line_of_class
    S.class_of_line = np.argsort(line_of_class)
    return S


def labels_from_sixer(G, sixer) -> np.ndarray | None:
    """line_of_class for the labelling with E_i = sixer[i], or None if inconsistent."""
    G = np.asarray(G)
    P = picweyl.class_pairing()
    sig_of_class = (P[:, :6] == 1) @ (1 << np.arange(6))
    sig_of_line = G[:, sixer] @ (1 << np.arange(6))
    sig_of_line[sixer] = -1 - np.arange(6)
    sig_of_class = sig_of_class.copy()
    sig_of_class[:6] = -1 - np.arange(6)
    lookup = {int(s): i for i, s in enumerate(sig_of_line)}
    if len(lookup) != 27:
        return None
    try:
        loc = np.array([lookup[int(s)] for s in sig_of_class], dtype=np.int64)
    except KeyError:
        return None
    if not np.array_equal(G[np.ix_(loc, loc)], P == 1):
        return None
    return loc


# --- smoothness -------------------------------------------------------------------
def scan_degrees(k: int) -> list[int]:
    """Extension degrees m with k*m <= 12 not contained in a larger allowed one."""
    top = MAX_DEGREE // k
    return [m for m in range(1, top + 1) if 2 * m > top]


def has_singular_point(C: CubicForm, m: int) -> bool:
    L = field(C.spec.k * m)
    return _kernels.singular_scan(partials(embed_coeffs(C, L)), QUAD_EXPONENTS, L)


_smooth_cache: dict = {}


def is_smooth(C: CubicForm) -> bool:
    """No singular point over GF(q^m), k*m <= 12, and a valid 27-line configuration."""
    if C in _smooth_cache:
        return _smooth_cache[C]
    ok = not any(has_singular_point(C, m) for m in scan_degrees(C.spec.k))
    if ok:
        try:
            S = find_lines(C)
            ok = len(S.plucker) == 27 and bool(np.all(S.graph.sum(axis=1) == 10))
        except (SplitCap, SingularSurface, LabelingFailed):
            ok = False
    _smooth_cache[C] = ok
    return ok


# --- Frobenius ----------------------------------------------------------------------
@dataclass
class GaloisImage:
    perm: np.ndarray       # on class indices
    line_perm: np.ndarray  # on sorted line indices
    order: int
    label: str
    fixed_lines: int


def frobenius_line_perm(S: SurfaceLines) -> np.ndarray:
    fr = S.ext.frob_table(S.base.k)
    idx = S.index()
    return np.array([idx[tuple(r)] for r in fr[S.plucker].tolist()], dtype=np.uint8)


def galois_image(C: CubicForm | SurfaceLines) -> GaloisImage:
    S = C if isinstance(C, SurfaceLines) else find_lines(C)
    lp = frobenius_line_perm(S)
    cp = S.line_perm_to_class_perm(lp)
    order = int(permgrp.perm_orders(cp)[0])
    return GaloisImage(cp, lp, order, picweyl.classify(cp), int(np.sum(cp == np.arange(27))))
