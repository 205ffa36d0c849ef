"""Permutation groups held as fully materialized element arrays.

A permutation is a row of uint8 images.  Composition follows (p*q)[i] =
p[q[i]], written ``p[q]`` in numpy.  Groups up to 10^6 elements are stored
as lexicographically sorted arrays, which keeps results identical across
kernel backends and makes every query a vectorized lookup.
"""
from __future__ import annotations

from collections import Counter
from functools import cached_property

import numpy as np
from scipy.sparse import coo_matrix
from scipy.sparse.csgraph import connected_components

from . import _kernels
from .errors import NotMember, NotSubgroup, Overflow

MAX_ORDER = 10**6


def as_perm(p, n: int | None = None) -> np.ndarray:
    a = np.asarray(p, dtype=np.int64).ravel()
    n = len(a) if n is None else n
    if len(a) != n or sorted(a.tolist()) != list(range(n)):
        raise ValueError(f"not a permutation of {n} points: {a.tolist()}")
    return a.astype(np.uint8)


def from_cycles(cycles, n: int) -> np.ndarray:
    p = np.arange(n, dtype=np.uint8)
    for cyc in cycles:
        for a, b in zip(cyc, cyc[1:] + cyc[:1]):
            p[a] = b
    return p


def compose(p, q) -> np.ndarray:
    """p after q."""
    return np.asarray(p)[np.asarray(q)]


def inverse(p) -> np.ndarray:
    p = np.asarray(p)
    out = np.empty_like(p)
    idx = np.arange(p.shape[-1], dtype=p.dtype)
    np.put_along_axis(out, p.astype(np.int64), np.broadcast_to(idx, p.shape), axis=-1)
    return out


def perm_orders(P) -> np.ndarray:
    """Element orders for a stack of permutations."""
    P = np.atleast_2d(np.asarray(P, dtype=np.int64))
    n = P.shape[1]
    start = np.broadcast_to(np.arange(n), P.shape)
    cur = P.copy()
    cyc = np.zeros(P.shape, dtype=np.int64)
    for step in range(1, n + 1):
        hit = (cur == start) & (cyc == 0)
        cyc[hit] = step
        cur = np.take_along_axis(P, cur, axis=1)
    return np.lcm.reduce(cyc, axis=1)


class GroupHandle:
    """A finite permutation group; elements are materialized on first use."""

    def __init__(self, gens, degree: int | None = None, cap: int = MAX_ORDER, elements=None):
        gens = [as_perm(g) for g in gens]
        if degree is None:
            if not gens and elements is None:
                raise ValueError("degree needed for a group without generators")
            degree = len(gens[0]) if gens else np.asarray(elements).shape[1]
        self.degree = degree
        self.cap = cap
        self._gens = np.array(gens, dtype=np.uint8).reshape(-1, degree)
        self._elements = None
        if elements is not None:
            E = np.ascontiguousarray(elements, dtype=np.uint8)
            self._elements = E[np.lexsort(E.T[::-1])]

    @classmethod
    def from_elements(cls, elements, degree: int | None = None) -> "GroupHandle":
        """Wrap an element set known to be a group; generators found on demand."""
        E = np.asarray(elements, dtype=np.uint8)
        return cls([], degree=E.shape[1] if degree is None else degree, elements=E)

    @property
    def elements(self) -> np.ndarray:
        if self._elements is None:
            if len(self._gens) == 0:
                self._elements = np.arange(self.degree, dtype=np.uint8)[None, :]
            else:
                self._elements = _kernels.perm_closure(self._gens, self.cap)
        return self._elements

    @property
    def gens(self) -> np.ndarray:
        if len(self._gens) == 0 and self._elements is not None and len(self._elements) > 1:
            self._gens = generating_set(self._elements)
        return self._gens

    @property
    def order(self) -> int:
        return len(self.elements)

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"GroupHandle(degree={self.degree}, order={self.order})"

    @cached_property
    def _index(self):
        E = self.elements
        h = (E[:, : min(self.degree, 64)].astype(np.uint64) * _kernels._RND[: min(self.degree, 64)]).sum(
            axis=1, dtype=np.uint64)
        order = np.argsort(h, kind="stable")
        return h[order], order

    def index_of(self, P) -> np.ndarray:
        """Positions in ``elements`` of each row of P, -1 when absent."""
        P = np.atleast_2d(np.asarray(P, dtype=np.uint8))
        sh, order = self._index
        k = min(self.degree, 64)
        h = (P[:, :k].astype(np.uint64) * _kernels._RND[:k]).sum(axis=1, dtype=np.uint64)
        pos = np.minimum(np.searchsorted(sh, h), len(sh) - 1)
        idx = order[pos]
        good = (sh[pos] == h) & np.all(self.elements[idx] == P, axis=1)
        return np.where(good, idx, -1)

    def contains(self, P) -> np.ndarray:
        return self.index_of(P) >= 0

    def __contains__(self, p) -> bool:
        return bool(self.contains(p)[0])

    def identity_index(self) -> int:
        return int(self.index_of(np.arange(self.degree))[0])

    @cached_property
    def element_orders(self) -> np.ndarray:
        return perm_orders(self.elements)

    def is_abelian(self) -> bool:
        g = self.gens
        return all(np.array_equal(a[b], b[a]) for a in g for b in g)


def closure(gens, cap: int = MAX_ORDER) -> GroupHandle:
    G = GroupHandle(gens, cap=cap)
    G.elements  # materialize now so Overflow surfaces here
    return G


def generating_set(elements) -> np.ndarray:
    """Greedy generators: scan in order, keep anything outside the current span."""
    E = np.asarray(elements, dtype=np.uint8)
    n = E.shape[1]
    gens: list[np.ndarray] = []
    H = GroupHandle([], degree=n)
    # elements of larger order first keeps the set short
    order = np.argsort(-perm_orders(E), kind="stable")
    for i in order:
        if len(H) == len(E):
            break
        if E[i] in H:
            continue
        gens.append(E[i])
        H = closure(gens, cap=len(E))
    return np.array(gens, dtype=np.uint8).reshape(-1, n)


def conjugate_all(E, s) -> np.ndarray:
    """s^-1 e s for every row e."""
    s = np.asarray(s)
    return inverse(s)[np.asarray(E)[:, s]]


def conjugacy_classes(G: GroupHandle) -> list[tuple[np.ndarray, int]]:
    """(representative, size) pairs; the representative is the smallest element."""
    labels = class_labels(G)
    reps, sizes = np.unique(labels, return_counts=True)
    first = {int(l): i for i, l in reversed(list(enumerate(labels)))}
    return [(G.elements[first[int(r)]], int(s)) for r, s in zip(reps, sizes)]


def class_labels(G: GroupHandle) -> np.ndarray:
    """Component label per element; labels are ordered by first element."""
    if G.order > MAX_ORDER:
        raise Overflow(MAX_ORDER)
    N = G.order
    src, dst = [], []
    for s in G.gens:
        src.append(np.arange(N))
        dst.append(G.index_of(conjugate_all(G.elements, s)))
    if not src:
        return np.zeros(N, dtype=np.int64)
    src = np.concatenate(src)
    dst = np.concatenate(dst)
    A = coo_matrix((np.ones(len(src), dtype=np.int8), (src, dst)), shape=(N, N))
    _, lab = connected_components(A, directed=False)
    # relabel by first occurrence so the labelling is canonical
    _, first = np.unique(lab, return_index=True)
    remap = np.empty(len(first), dtype=np.int64)
    remap[np.argsort(np.argsort(first))] = np.arange(len(first))
    return remap[lab]


def commutes_with(E, g) -> np.ndarray:
    g = np.asarray(g)
    return np.all(E[:, g] == g[E], axis=1)


def centralizer(G: GroupHandle, g) -> GroupHandle:
    g = as_perm(g, G.degree)
    if g not in G:
        raise NotMember("element is not in the group")
    return GroupHandle.from_elements(G.elements[commutes_with(G.elements, g)])


def center(G: GroupHandle) -> GroupHandle:
    mask = np.ones(G.order, dtype=bool)
    for s in G.gens:
        mask &= commutes_with(G.elements, s)
    return GroupHandle.from_elements(G.elements[mask], degree=G.degree)


def normal_closure(G: GroupHandle, seeds) -> GroupHandle:
    """Smallest normal subgroup of G containing the seeds."""
    n = G.degree
    gens: list[np.ndarray] = []
    H = GroupHandle([], degree=n)
    queue = [np.asarray(s, dtype=np.uint8) for s in seeds]
    while queue:
        c = queue.pop()
        if c in H:
            continue
        gens.append(c)
        H = closure(gens, cap=G.order)
        # conjugates of every generator must stay inside H
        queue.extend(inverse(s)[c[s]] for s in G.gens)
    return H


def commutator(a, b) -> np.ndarray:
    """a^-1 b^-1 a b."""
    ai, bi = inverse(a), inverse(b)
    return ai[bi[a[b]]]


def derived_subgroup(G: GroupHandle) -> GroupHandle:
    if G.order > MAX_ORDER:
        raise Overflow(MAX_ORDER)
    g = G.gens
    comms = [commutator(a, b) for i, a in enumerate(g) for b in g[i + 1:]]
    return normal_closure(G, comms)


def derived_series_orders(G: GroupHandle) -> tuple[int, ...]:
    out = [G.order]
    H = G
    while True:
        D = derived_subgroup(H)
        if D.order == H.order:
            return tuple(out)
        out.append(D.order)
        H = D
        if D.order == 1:
            return tuple(out)


def is_simple(G: GroupHandle) -> bool:
    """Nonabelian simple test: perfect, and every nontrivial class generates G normally."""
    if G.order == 1:
        return False
    if G.is_abelian():
        return all(G.order % d for d in range(2, int(G.order**0.5) + 1))
    if derived_subgroup(G).order != G.order:
        return False
    for rep, _ in conjugacy_classes(G):
        if np.array_equal(rep, np.arange(G.degree)):
            continue
        if normal_closure(G, [rep]).order != G.order:
            return False
    return True


# --- fingerprints and identification ----------------------------------------
def fingerprint(G: GroupHandle) -> tuple:
    classes = conjugacy_classes(G)
    return (
        G.order,
        center(G).order,
        derived_series_orders(G),
        tuple(sorted(s for _, s in classes)),
        tuple(sorted(Counter(G.element_orders.tolist()).items())),
    )


def _cyclic(n: int) -> GroupHandle:
    return closure([np.roll(np.arange(n), -1)])


def _z2_s4() -> GroupHandle:
    return closure([from_cycles([(0, 1)], 6), from_cycles([(0, 1, 2, 3)], 6), from_cycles([(4, 5)], 6)])


def _s6() -> GroupHandle:
    return closure([from_cycles([(0, 1)], 6), from_cycles([(0, 1, 2, 3, 4, 5)], 6)])


def _a6() -> GroupHandle:
    return closure([from_cycles([(0, 1, 2)], 6), from_cycles([(1, 2, 3, 4, 5)], 6)])


def orthogonal_we6() -> GroupHandle:
    """O6^-(2) on its 27 nonzero singular vectors, generated by transvections.

    Q = x1 x2 + x3 x4 + x5^2 + x5 x6 + x6^2 has minus type.  This gives an
    independent model of W(E6), built without any root system.
    """
    vecs = [tuple((v >> i) & 1 for i in range(6)) for v in range(64)]

    def Q(v):
        return (v[0] * v[1] + v[2] * v[3] + v[4] + v[4] * v[5] + v[5]) % 2

    def B(u, v):
        return (u[0] * v[1] + u[1] * v[0] + u[2] * v[3] + u[3] * v[2] + u[4] * v[5] + u[5] * v[4]) % 2

    singular = [v for v in vecs if any(v) and Q(v) == 0]
    pos = {v: i for i, v in enumerate(singular)}
    gens = []
    for a in vecs:
        if not any(a) or Q(a) != 1:
            continue
        img = [pos[tuple((x + B(v, a) * y) % 2 for x, y in zip(v, a))] for v in singular]
        gens.append(img)
    return closure(gens)


def _elementary_a5() -> GroupHandle:
    """(Z/2)^4 : A5 as even sign changes and even permutations of +-e_0..e_4."""
    def signed(perm, signs):
        img = np.empty(10, dtype=np.uint8)
        for i in range(5):
            j = perm[i]
            img[i] = j + 5 * signs[j]
            img[i + 5] = j + 5 * (1 - signs[j])
        return img

    return closure([
        signed([1, 2, 0, 3, 4], [0] * 5),
        signed([1, 2, 3, 4, 0], [0] * 5),
        signed(list(range(5)), [1, 1, 0, 0, 0]),
    ])


_REFERENCES = {
    "Z/2": lambda: _cyclic(2),
    "Z/5": lambda: _cyclic(5),
    "Z/10": lambda: _cyclic(10),
    "Z/2xS4": _z2_s4,
    "S6": _s6,
    "A6": _a6,
    "PSU4(F2)": lambda: derived_subgroup(orthogonal_we6()),
    "W(E6)": orthogonal_we6,
    "(Z/2)^4:A5": _elementary_a5,
}
_fingerprints: dict[str, tuple] = {}


def reference_fingerprint(label: str) -> tuple:
    if label not in _fingerprints:
        _fingerprints[label] = fingerprint(_REFERENCES[label]())
    return _fingerprints[label]


def identify_group(G: GroupHandle) -> str:
    if G.order == 1:
        return "trivial"
    if G.order > MAX_ORDER:
        return f"other({G.order})"
    candidates = [lab for lab in _REFERENCES if _REF_ORDERS[lab] == G.order]
    if not candidates:
        return f"other({G.order})"
    fp = fingerprint(G)
    for lab in candidates:
        if reference_fingerprint(lab) == fp:
            return lab
    return f"other({G.order})"


_REF_ORDERS = {"Z/2": 2, "Z/5": 5, "Z/10": 10, "Z/2xS4": 48, "S6": 720, "A6": 360,
               "PSU4(F2)": 25920, "W(E6)": 51840, "(Z/2)^4:A5": 960}


def is_cyclic(G: GroupHandle) -> bool:
    return int(G.element_orders.max()) == G.order


# --- subgroup conjugacy -------------------------------------------------------
def conjugating_elements(G: GroupHandle, K: GroupHandle, H: GroupHandle) -> np.ndarray:
    """Indices of g in G with g^-1 K g = H."""
    if K.order != H.order:
        return np.zeros(0, dtype=np.int64)
    E = G.elements
    ok = np.ones(len(E), dtype=bool)
    Einv = inverse(E)
    for k in K.gens:
        conj = np.take_along_axis(Einv, k[E.astype(np.int64)], axis=1)
        ok &= H.contains(conj)
    return np.flatnonzero(ok)


def all_conjugate(G: GroupHandle, subgroups) -> tuple[bool, list]:
    """(True, witnesses) when every subgroup is conjugate to the first one.

    witnesses[i] is some g with g^-1 S_0 g = S_i.
    """
    subgroups = list(subgroups)
    for S in subgroups:
        if not np.all(G.contains(S.elements)):
            raise NotSubgroup("subgroup is not contained in the ambient group")
    if len(subgroups) <= 1:
        return True, [np.arange(G.degree, dtype=np.uint8)] * len(subgroups)
    K = subgroups[0]
    witnesses = []
    for S in subgroups:
        idx = conjugating_elements(G, K, S)
        if len(idx) == 0:
            return False, witnesses
        witnesses.append(G.elements[idx[0]])
    return True, witnesses


def find_a6_subgroups(G: GroupHandle, a) -> list[GroupHandle]:
    """Every A6 in G that contains the order-5 element ``a``."""
    a = as_perm(a, G.degree)
    seen: set[bytes] = set()
    found = []
    cands = np.flatnonzero((G.element_orders > 1) & (G.element_orders <= 5))
    for i in cands:
        try:
            elems = _kernels.perm_closure(np.stack([a, G.elements[i]]), 361)
        except Overflow:
            continue
        if len(elems) != 360:
            continue
        key = elems.tobytes()
        if key in seen:
            continue
        seen.add(key)
        H = GroupHandle([a, G.elements[i]], elements=elems)
        if identify_group(H) == "A6":
            found.append(H)
    return found
