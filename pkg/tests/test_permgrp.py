from itertools import combinations

import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubic27 import permgrp as pg
from cubic27 import picweyl
from cubic27.errors import NotMember, NotSubgroup, Overflow


def sym(n):
    return pg.closure([pg.from_cycles([(0, 1)], n), np.roll(np.arange(n), -1)])


def alt(n):
    return pg.closure([pg.from_cycles([(i, i + 1, i + 2)], n) for i in range(n - 2)])


@pytest.fixture(scope="module")
def W():
    return picweyl.weyl_group()


@pytest.fixture(scope="module")
def D(W):
    return pg.derived_subgroup(W)


def test_closure_examples():
    assert pg.closure([[1, 0]]).order == 2
    assert pg.closure([pg.from_cycles([(0, 1)], 5), pg.from_cycles([(0, 1, 2, 3, 4)], 5)]).order == 120
    with pytest.raises(Overflow):
        pg.closure([pg.from_cycles([(0, 1)], 6), np.roll(np.arange(6), 1)], cap=100)


def test_conjugacy_classes_s3():
    assert sorted(s for _, s in pg.conjugacy_classes(sym(3))) == [1, 2, 3]


def test_centralizer_of_identity_is_whole_group():
    G = sym(5)
    assert pg.centralizer(G, np.arange(5)).order == 120
    with pytest.raises(NotMember):
        pg.centralizer(alt(5), pg.from_cycles([(0, 1)], 5))


def test_derived_subgroups():
    assert pg.derived_subgroup(pg.closure([np.roll(np.arange(7), 1)])).order == 1
    S5 = sym(5)
    A5 = pg.derived_subgroup(S5)
    assert A5.order == 60 and pg.is_simple(A5)
    assert not pg.is_simple(S5)


def _s6_on_pairs():
    """S6 acting on the 15 two-element subsets: same group, different action."""
    pairs = list(combinations(range(6), 2))
    idx = {p: i for i, p in enumerate(pairs)}

    def induced(s):
        return [idx[tuple(sorted((s[a], s[b])))] for a, b in pairs]

    return pg.closure([induced([1, 0, 2, 3, 4, 5]), induced([1, 2, 3, 4, 5, 0])])


def test_identify_independent_constructions():
    assert pg.identify_group(_s6_on_pairs()) == "S6"
    # Z/2 x S4 as S4 on 4 points times a transposition on 2 more
    z2s4 = pg.closure([pg.from_cycles([(0, 1)], 6), pg.from_cycles([(0, 1, 2, 3)], 6), pg.from_cycles([(4, 5)], 6)])
    assert pg.identify_group(z2s4) == "Z/2xS4"
    assert pg.identify_group(alt(6)) == "A6"
    assert pg.identify_group(pg.closure([np.roll(np.arange(10), 1)])) == "Z/10"
    assert pg.identify_group(sym(5)) == "other(120)"


def test_all_conjugate():
    G = sym(5)
    K = pg.closure([pg.from_cycles([(0, 1, 2)], 5)])
    h = pg.from_cycles([(0, 3), (1, 4)], 5)
    H = pg.GroupHandle.from_elements(pg.conjugate_all(K.elements, h))
    ok, wit = pg.all_conjugate(G, [K])
    assert ok
    ok, wit = pg.all_conjugate(G, [K, H])
    assert ok
    g = wit[1]
    assert set(map(bytes, pg.conjugate_all(K.elements, g))) == set(map(bytes, H.elements))
    other = pg.closure([pg.from_cycles([(0, 1), (2, 3)], 5)])
    assert not pg.all_conjugate(G, [K, pg.closure([pg.from_cycles([(0, 1, 2), (3, 4)], 5)])])[0]
    assert not pg.all_conjugate(G, [K, other])[0]
    with pytest.raises(NotSubgroup):
        pg.all_conjugate(alt(5), [pg.closure([pg.from_cycles([(0, 1)], 5)])])


def test_weyl_structure(W, D):
    assert W.order == 51840
    assert D.order == 25920 and pg.is_simple(D)
    assert pg.identify_group(D) == "PSU4(F2)"
    assert pg.identify_group(W) == "W(E6)"
    assert pg.center(W).order == 1


def test_weyl_centralizers(W):
    orders = W.element_orders
    five = W.elements[np.flatnonzero(orders == 5)[0]]
    C = pg.centralizer(W, five)
    assert C.order == 10 and pg.is_cyclic(C)
    labels = picweyl.classify_many(W.elements[orders == 2])
    a1 = W.elements[orders == 2][labels.index("A1")]
    assert pg.centralizer(W, a1).order == 1440


def _centralizer_of_subgroup(G, H):
    mask = np.ones(G.order, dtype=bool)
    for s in H.gens:
        mask &= pg.commutes_with(G.elements, s)
    return int(mask.sum())


def test_trivial_centralizers(W, D):
    assert _centralizer_of_subgroup(W, D) == 1
    stab = picweyl.line_stabilizer(D, 0)
    assert stab.order == 960
    assert pg.identify_group(stab) == "(Z/2)^4:A5"
    assert _centralizer_of_subgroup(W, stab) == 1


def test_census_orbit_stabilizer(W):
    sizes = [s for _, s in pg.conjugacy_classes(W)]
    assert len(sizes) == 25 and sum(sizes) == 51840
    for rep, size in pg.conjugacy_classes(W):
        assert pg.centralizer(W, rep).order * size == W.order


perm5 = st.permutations(range(5)).map(np.array)


@given(st.lists(perm5, min_size=1, max_size=3))
def test_closure_is_a_group_and_idempotent(gens):
    G = pg.closure(gens)
    E = G.elements
    assert G.order in (1, 2, 3, 4, 5, 6, 8, 10, 12, 20, 24, 60, 120)
    assert pg.closure(E).order == G.order
    # closed under composition with the generators
    for g in gens:
        assert np.all(G.contains(E[:, g]))
    assert np.all(G.contains(pg.inverse(E)))


@given(perm5, perm5)
def test_compose_and_inverse(p, q):
    pq = pg.compose(p, q)
    assert np.array_equal(pq, p[q])
    assert np.array_equal(pg.compose(pq, pg.inverse(pq)), np.arange(5))
