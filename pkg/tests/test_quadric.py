import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubic27 import linalg
from cubic27 import quadric as Q
from cubic27.errors import Capacity, DuplicatePoints, FieldMismatch, NoOrderFive, ShortOrbit
from cubic27.gf2k import field, smallest_fifth_root

F2, F4, F16 = field(1), field(2), field(4)
S4, S16, W2 = Q.split(F4), Q.split(F16), Q.weil(F2)


def test_point_counts():
    assert len(Q.points(S4)) == 25
    assert len(Q.points(W2)) == 5
    assert len(Q.points(S16)) == 289
    with pytest.raises(Capacity):
        Q.points(Q.split(field(5)))


def test_point_index_roundtrip():
    for model in (S4, W2):
        for i, p in enumerate(Q.points(model)):
            assert Q.point_index(p) == i
            assert Q.point_from_index(model, i) == p


def test_swap_exchanges_rulings():
    I = np.eye(2, dtype=np.int64)
    swap = Q.qaut(S4, [I, I], flip=True)
    p = Q.qpoint(S4, [1, 0], [0, 1])
    assert Q.act(swap, p) == Q.qpoint(S4, [0, 1], [1, 0])


def test_weil_twist_is_frobenius():
    I = np.eye(2, dtype=np.int64)
    tw = Q.qaut(W2, [I], flip=True)
    g = F4.gen
    assert Q.act(tw, Q.qpoint(W2, [1, g])) == Q.qpoint(W2, [1, F4.mul(g, g)])


def test_singular_matrix_rejected():
    with pytest.raises(ValueError):
        Q.qaut(W2, [[[1, 1], [1, 1]]])


def _mat(F):
    return st.lists(st.integers(0, F.order - 1), min_size=4, max_size=4).map(
        lambda v: np.array(v).reshape(2, 2)).filter(lambda M: linalg.det(M, F) != 0)


split_aut = st.builds(lambda A, B, f: Q.qaut(S4, [A, B], f), _mat(F4), _mat(F4), st.booleans())
weil_aut = st.builds(lambda A, f: Q.qaut(W2, [A], f), _mat(F4), st.booleans())


@given(split_aut, split_aut, st.integers(0, 24))
def test_compose_is_action_split(g, h, i):
    p = Q.point_from_index(S4, i)
    assert Q.act(Q.compose(g, h), p) == Q.act(g, Q.act(h, p))


@given(weil_aut, weil_aut, st.integers(0, 4))
def test_compose_is_action_weil(g, h, i):
    p = Q.point_from_index(W2, i)
    assert Q.act(Q.compose(g, h), p) == Q.act(g, Q.act(h, p))


@given(split_aut, st.lists(st.integers(0, 24), min_size=5, max_size=5, unique=True))
def test_general_position_is_invariant(g, idx):
    pts = [Q.point_from_index(S4, i) for i in idx]
    assert Q.is_general_position(pts) == Q.is_general_position([Q.act(g, p) for p in pts])


# --- general position examples ----------------------------------------------------------
def _xi_points(e1, e2):
    xi = smallest_fifth_root(F16)
    return [Q.qpoint(S16, [1, F16.pow(xi, e1 * i)], [1, F16.pow(xi, e2 * i)]) for i in range(5)]


def test_gp_orbit_example():
    assert Q.is_general_position(_xi_points(1, 2))


def test_gp_diagonal_fails():
    # all five on the graph of the identity, a (1,1) curve
    assert not Q.is_general_position(_xi_points(1, 1))


def test_gp_shared_ruling_fails():
    pts = _xi_points(1, 2)
    pts[1] = Q.qpoint(S16, pts[0].coords[0], [0, 1])
    assert not Q.is_general_position(pts)


def test_gp_errors():
    pts = _xi_points(1, 2)
    with pytest.raises(DuplicatePoints):
        Q.is_general_position(pts[:4] + pts[:1])
    with pytest.raises(FieldMismatch):
        Q.is_general_position(pts[:4] + [Q.qpoint(S4, [1, 0], [0, 1])])


# --- order-5 elements -------------------------------------------------------------------
@pytest.mark.parametrize("model", [S4, S16, W2], ids=repr)
def test_order5_reps_have_order_5(model):
    reps = Q.order5_reps(model)
    ident = Q.identity_aut(model)
    for g in reps:
        assert Q.power(g, 5) == ident
        assert all(Q.power(g, e) != ident for e in range(1, 5))


def test_order5_rep_counts():
    assert len(Q.order5_reps(S4)) == 2
    assert len(Q.order5_reps(S16)) == 3
    assert len(Q.order5_reps(W2)) == 1


def test_no_order5_in_odd_degree():
    with pytest.raises(NoOrderFive):
        Q.order5_reps(Q.split(field(3)))


def test_fixed_point_has_short_orbit():
    g = Q.order5_reps(S16)[0]
    with pytest.raises(ShortOrbit):
        Q.orbit_of(g, Q.qpoint(S16, [1, 0], [1, 0]))


def test_weil_orbit_example():
    g = F4.gen
    R = Q.order5_reps(W2)[0]
    want = [[1, 1], [1, F4.mul(g, g)], [0, 1], [1, 0], [1, g]]
    assert Q.orbit_of(R, Q.qpoint(W2, [1, 1])) == [Q.qpoint(W2, c) for c in want]


def test_eta4_orbits_are_never_general():
    # (d(1), d(4)) preserves the (1,1) curves x0 y0 = c x1 y1
    eta4 = Q.order5_reps(S16)[2]
    orbits = Q.orbits_of_aut(eta4)
    assert len(orbits) == 57
    assert not any(Q.is_general_position(o) for o in orbits)


def test_eta2_eta3_exchanged_by_swap():
    I = np.eye(2, dtype=np.int64)
    swap = Q.qaut(S16, [I, I], flip=True)
    eta2, eta3 = Q.order5_reps(S16)[:2]
    for orb in Q.orbits_of_aut(eta2)[:10]:
        img = {Q.act(swap, p) for p in orb}
        assert {Q.act(eta3, p) for p in img} == img


# --- orbit classes ----------------------------------------------------------------------
@pytest.mark.parametrize("model", [S4, W2, Q.weil(F4)], ids=repr)
def test_full_and_reduced_routes_agree(model):
    assert Q.count_orbit_classes(model, "full") == Q.count_orbit_classes(model, "reduced")


def test_odd_split_has_no_classes():
    assert Q.count_orbit_classes(Q.split(field(3))) == 0


def test_canonical_form_is_orbit_invariant():
    T, orbits = Q.general_position_orbits_full(S4)
    orb = orbits[0]
    forms = {Q.canonical_form(T, tuple(int(x) for x in T[g][list(orb)])) for g in range(0, len(T), 7)}
    assert len(forms) == 1
