import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubic27 import picweyl as pw
from cubic27.errors import NotInvolution, NotPairingPreserving

NAMES = pw.class_names()
IDX = {n: i for i, n in enumerate(NAMES)}
C = pw.standard_classes()


@pytest.fixture(scope="module")
def W():
    return pw.weyl_group()


def test_class_vectors():
    assert C[IDX["L12"]].tolist() == [1, -1, -1, 0, 0, 0, 0]
    assert C[IDX["Q1"]].tolist() == [2, 0, -1, -1, -1, -1, -1]
    assert C[IDX["E3"]].tolist() == [0, 0, 0, 1, 0, 0, 0]


def test_pairings():
    assert pw.pairing(C[IDX["E1"]], C[IDX["Q2"]]) == 1
    assert pw.pairing(C[IDX["E1"]], C[IDX["Q1"]]) == 0
    assert pw.pairing(C[IDX["L12"]], C[IDX["L34"]]) == 1
    assert pw.pairing(C[IDX["L12"]], C[IDX["L23"]]) == 0
    assert pw.pairing(pw.K, pw.K) == 3
    # every class is a (-1)-curve of degree 1
    assert np.all(pw.pairing(C, C) == -1)
    assert np.all(pw.pairing(C, pw.K) == -1)


def test_schlafli_graph():
    A = pw.class_pairing() == 1
    assert np.all(A.sum(axis=1) == 10)
    assert pw.skew_pair_common_neighbours() == {5}


def test_roots():
    R = pw.roots()
    assert len(R) == 72
    assert np.all(pw.pairing(R, R) == -2)
    for a in pw.simple_roots():
        assert any(np.array_equal(a, r) for r in R)


def test_identity_maps():
    ident = np.arange(27)
    assert np.array_equal(pw.perm_to_lattice(ident), np.eye(7, dtype=int))
    assert pw.classify(ident) == "identity"
    with pytest.raises(NotPairingPreserving):
        pw.perm_to_lattice(np.r_[6, 1, 2, 3, 4, 5, 0, np.arange(7, 27)])   # swaps E1 and L12
    with pytest.raises(NotInvolution):
        pw.fixed_line_profile(ident)


def test_classify_by_order(W):
    orders = W.element_orders
    assert set(pw.classify_many(W.elements[orders == 5])) == {"A4"}
    ten = W.elements[orders == 10]
    assert set(pw.classify_many(ten)) == {"A4xA1"}
    p5 = ten.astype(np.int64)
    for _ in range(4):
        p5 = np.take_along_axis(ten.astype(np.int64), p5, axis=1)
    assert set(pw.classify_many(p5)) == {"A1"}
    assert pw.classify(W.elements[np.flatnonzero(orders == 3)[0]]) == "other(3)"


def test_profiles_examples(W):
    inv = W.elements[W.element_orders == 2]
    labels = pw.classify_many(inv)
    want = {"A1": (15, 6, 0), "A1^2": (7, 8, 2), "A1^4": (3, 0, 12)}
    for lab, prof in want.items():
        assert pw.fixed_line_profile(inv[labels.index(lab)]) == prof


def test_order5_elements_fix_two_skew_classes(W):
    P = pw.class_pairing()
    five = W.elements[W.element_orders == 5]
    fixed = five == np.arange(27)
    assert np.all(fixed.sum(axis=1) == 2)
    for w, f in zip(five[::97], fixed[::97]):
        a, b = np.flatnonzero(f)
        assert P[a, b] == 0
        quint = np.flatnonzero((P[a] == 1) & (P[b] == 1))
        assert len(quint) == 5
        assert not np.any(P[np.ix_(quint, quint)] == 1)
        # a single orbit of length five
        orbit = {int(quint[0])}
        x = int(quint[0])
        for _ in range(4):
            x = int(w[x])
            orbit.add(x)
        assert orbit == set(quint.tolist())


def test_census_and_charpolys():
    rows = pw.class_census()
    assert sorted((r["label"], r["size"], r["centralizer"]) for r in rows) == sorted([
        ("A1", 36, 1440), ("A1^4", 45, 1152), ("A1^2", 270, 192),
        ("A1^3", 540, 96), ("A4", 5184, 10), ("A4xA1", 5184, 10)])
    for r in rows:
        poly = pw.root_charpoly(pw.perm_to_lattice(r["rep"]))
        assert np.array_equal(poly, pw.EXPECTED_CHARPOLY[r["label"]])


def test_charpoly_matches_numpy_eigen_route(W):
    # independent route: numpy's float characteristic polynomial, rounded
    for w in W.elements[:: 5000]:
        M = pw.perm_to_lattice(w)
        exact = pw.charpoly(M)
        approx = np.round(np.poly(M.astype(float))).astype(int)
        assert np.array_equal(exact, approx)


@given(st.integers(0, 51839))
def test_lattice_action_is_isometry(i):
    W = pw.weyl_group()
    w = W.elements[i]
    M = pw.perm_to_lattice(w)
    assert np.array_equal(M.T @ pw.FORM @ M, pw.FORM)
    assert np.array_equal(M @ pw.K, pw.K)
    assert abs(round(np.linalg.det(M))) == 1
    assert np.array_equal(pw.lattice_to_perm(M), w)
    assert np.array_equal(pw.perms_to_lattice(w[None])[0], M)
