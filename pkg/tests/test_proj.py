import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubic27 import linalg, proj
from cubic27.errors import DegenerateFrame, EqualPoints, NoOrderFive, NotOrderFive
from cubic27.gf2k import field

GF2, GF4, GF16 = field(1), field(2), field(4)
E = [proj.point(r, GF4) for r in np.eye(4, dtype=int)]


def pl(**kw):
    names = ["01", "02", "03", "12", "13", "23"]
    return proj.plucker_line([kw.get("p" + n, 0) for n in names], GF4)


def test_line_through_axes():
    assert proj.line_through(E[0], E[1]) == pl(p01=1)
    assert proj.line_through(E[1], E[3]) == pl(p13=1)
    with pytest.raises(EqualPoints):
        proj.line_through(E[2], E[2])


def test_lines_meet_examples():
    l = pl(p01=1)
    assert proj.lines_meet(l, l)
    assert not proj.lines_meet(l, pl(p23=1))
    assert proj.lines_meet(l, pl(p02=1))


def test_apply_examples():
    swap = proj.projectivity(np.eye(4, dtype=int)[[1, 0, 2, 3]], GF4)
    I = proj.identity(4, GF4)
    assert proj.apply(swap, E[0]) == E[1]
    for x in E + [pl(p01=1), pl(p13=1)]:
        assert proj.apply(I, x) == x


def test_frames():
    unit = proj.point([1, 1, 1, 1], GF4)
    std = E + [unit]
    assert proj.projectivity_from_frames(std, std).is_identity()
    swapped = [E[1], E[0], E[2], E[3], unit]
    T = proj.projectivity_from_frames(std, swapped)
    assert T == proj.projectivity(np.eye(4, dtype=int)[[1, 0, 2, 3]], GF4)
    with pytest.raises(DegenerateFrame):
        proj.projectivity_from_frames(std, [E[0], E[1], E[2], proj.point([1, 1, 0, 0], GF4), unit])


def test_pgl2_order5_reps():
    # c = u + 1 is the image of xi + xi^4 in GF(4)
    assert proj.pgl2_order5_rep(GF4) == proj.projectivity([[3, 1], [1, 0]], GF4)
    assert proj.pgl2_order5_rep(GF16).array().tolist() == [[1, 0], [0, GF16.gpow(3)]]
    with pytest.raises(NoOrderFive):
        proj.pgl2_order5_rep(field(3))
    for F in (GF4, GF16):
        r = proj.pgl2_order5_rep(F)
        assert not r.is_identity() and r.power(5).is_identity()


def test_lift_to_order5():
    for F in (GF4, GF16):
        r = proj.pgl2_order5_rep(F)
        M = proj.lift_to_order5(r)
        assert proj.projectivity(M, F) == r
        P = M
        for _ in range(4):
            P = linalg.matmul(P, M, F)
        assert np.array_equal(P, np.eye(2, dtype=int))
    scaled = proj.Projectivity(tuple(tuple(int(GF16.mul(x, 7)) for x in row) for row in proj.pgl2_order5_rep(GF16).array()), GF16)
    M = proj.lift_to_order5(scaled)
    assert np.array_equal(proj.pgl2_power(M, 5, GF16), np.eye(2, dtype=int))
    with pytest.raises(NotOrderFive):
        proj.lift_to_order5(proj.projectivity([[0, 1], [1, 0]], GF4))


@pytest.mark.parametrize("F", [GF4, GF16], ids=repr)
def test_order5_subgroups_are_conjugate(F):
    """Every order-5 element generates a conjugate of the representative's subgroup."""
    G = proj.pgl2_elements(F)
    assert len(G) == proj.pgl2_order(F)
    five = proj.order5_elements(F)
    rep = proj.pgl2_order5_rep(F).array()
    sub = {proj.pgl2_power(rep, e, F).tobytes() for e in range(1, 5)}
    Ginv = np.array([linalg.inverse(g, F) for g in G])
    for a in five[:: max(1, len(five) // 40)]:
        conj = proj.pgl2_normalize(linalg.matmul(linalg.matmul(Ginv, a[None], F), G, F), F)
        assert any(c.tobytes() in sub for c in conj)


def _invertible(F, draw_vals):
    M = np.array(draw_vals, dtype=np.int64).reshape(4, 4)
    return M if linalg.det(M, F) else None


@given(st.lists(st.integers(0, 3), min_size=16, max_size=16),
       st.lists(st.integers(0, 3), min_size=8, max_size=8),
       st.lists(st.integers(0, 3), min_size=8, max_size=8))
def test_meeting_is_projectively_invariant(tvals, a, b):
    F = GF4
    M = _invertible(F, tvals)
    if M is None:
        return
    T = proj.projectivity(M, F)
    pts = [np.array(a[:4]), np.array(a[4:]), np.array(b[:4]), np.array(b[4:])]
    if linalg.rank(np.stack(pts[:2]), F) < 2 or linalg.rank(np.stack(pts[2:]), F) < 2:
        return
    l1 = proj.line_through(proj.point(pts[0], F), proj.point(pts[1], F))
    l2 = proj.line_through(proj.point(pts[2], F), proj.point(pts[3], F))
    for l in (l1, l2, proj.apply(T, l1)):
        assert int(proj.plucker_relation(l.p, F)) == 0
    assert proj.lines_meet(l1, l2) == proj.lines_meet(l2, l1)
    assert proj.lines_meet(l1, l2) == proj.lines_meet(proj.apply(T, l1), proj.apply(T, l2))


def test_wedge2_is_multiplicative():
    F = GF4
    rng = np.random.default_rng(5)
    for _ in range(30):
        A, B = rng.integers(0, 4, (2, 4, 4))
        lhs = proj.wedge2(linalg.matmul(A, B, F), F)
        rhs = linalg.matmul(proj.wedge2(A, F), proj.wedge2(B, F), F)
        assert np.array_equal(lhs, rhs)


def test_linalg_inverse_and_nullspace():
    F = GF16
    rng = np.random.default_rng(1)
    for _ in range(30):
        M = rng.integers(0, 16, (4, 4))
        if linalg.det(M, F):
            assert np.array_equal(linalg.matmul(M, linalg.inverse(M, F), F), np.eye(4, dtype=int))
        N = rng.integers(0, 16, (3, 6))
        K = linalg.nullspace(N, F)
        assert len(K) + linalg.rank(N, F) == 6
        if len(K):
            assert not np.any(linalg.matmul(N, K.T, F))

