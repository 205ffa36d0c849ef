import numpy as np
import pytest
from hypothesis import given, strategies as st

from cubic27 import linalg
from cubic27.cubic import (CLEBSCH_LIKE, FERMAT, find_lines, format_cubic, galois_image,
                           is_smooth, parse_cubic)
from cubic27.cubic.form import eval_form, substitute
from cubic27.errors import CubicSyntaxError, WrongDegree, ZeroForm
from cubic27.gf2k import field

F2, F4, F8 = field(1), field(2), field(3)


# --- parsing ---------------------------------------------------------------------------
def test_parse_roundtrip():
    C = parse_cubic("x^3 + g*y^2*z + g^2*t^3", F4)
    assert parse_cubic(format_cubic(C), F4) == C


def test_parse_collects_like_terms():
    C = parse_cubic("x*y*z + z*x*y + t^3", F2)
    assert C == parse_cubic("t^3", F2)


@pytest.mark.parametrize("text,err", [
    ("x^2", WrongDegree),
    ("x^3*y", WrongDegree),
    ("x^3+", CubicSyntaxError),
    ("x^3+w^3", CubicSyntaxError),
    ("2*x^3", CubicSyntaxError),
    ("", CubicSyntaxError),
    ("x^3+x^3", ZeroForm),
])
def test_parse_rejects(text, err):
    with pytest.raises(err):
        parse_cubic(text, F2)


# --- substitution ----------------------------------------------------------------------
elem8 = st.integers(0, 7)


@given(st.lists(elem8, min_size=20, max_size=20),
       st.lists(elem8, min_size=16, max_size=16),
       st.lists(elem8, min_size=4, max_size=4))
def test_substitute_matches_pointwise(coef, T, P):
    coef, T, P = np.array(coef), np.array(T).reshape(4, 4), np.array(P)
    lhs = eval_form(substitute(coef, T, F8), P[None], F8)[0]
    TP = linalg.matmul(T, P[:, None], F8)[:, 0]
    assert lhs == eval_form(coef, TP[None], F8)[0]


# --- smoothness ------------------------------------------------------------------------
@pytest.mark.parametrize("text,k,smooth", [
    (FERMAT, 1, True),
    (FERMAT, 2, True),
    (CLEBSCH_LIKE, 1, True),
    ("x^2*y+z^3+t^3", 1, False),
    ("x*y*z+t^3", 1, False),
    ("x^3+y^3+z^3", 1, False),
])
def test_is_smooth(text, k, smooth):
    assert is_smooth(parse_cubic(text, field(k))) is smooth


# --- lines -----------------------------------------------------------------------------
def _on(rows, form, F):
    return not np.any(np.bitwise_xor.reduce(F.mul_arr(rows, np.asarray(form)[None, :]), axis=-1))


def test_fermat_gf4_lines():
    S = find_lines(parse_cubic(FERMAT, F4))
    assert S.m == 1 and len(S.plucker) == 27
    # x = a y, z = b t with a^3 = b^3 = 1: every nonzero element of GF(4)
    hits = sum(any(_on(r, [1, a, 0, 0], F4) and _on(r, [0, 0, 1, b], F4)
                   for a in range(1, 4) for b in range(1, 4)) for r in S.rows)
    assert hits == 9


def test_clebsch_like_lines_over_gf4():
    S = find_lines(parse_cubic(CLEBSCH_LIKE, F2))
    assert S.m == 2
    target = np.array([[0, 1, 0, 0], [0, 0, 0, 1]])
    assert any(np.array_equal(r, target) for r in S.rows)


def test_fermat_gf2_splits_over_gf4():
    assert find_lines(parse_cubic(FERMAT, F2)).m == 2


def test_incidence_shape():
    S = find_lines(parse_cubic(FERMAT, F4))
    G = S.graph
    assert np.array_equal(G, G.T) and not G.diagonal().any()
    assert np.all(G.sum(axis=1) == 10)
    skew = ~G & ~np.eye(27, dtype=bool)
    common = (G.astype(int) @ G.astype(int))[skew]
    assert np.all(common == 5)


def test_labels_respect_incidence():
    S = find_lines(parse_cubic(CLEBSCH_LIKE, F2))
    loc = S.line_of_class
    E1, E2, L12, L34, Q1 = 0, 1, 6, 15, 21
    assert S.graph[loc[L12], loc[L34]]
    assert S.graph[loc[E1], loc[L12]] and not S.graph[loc[E1], loc[E2]]
    assert not S.graph[loc[E1], loc[Q1]]
    assert np.array_equal(S.class_of_line[loc], np.arange(27))


# --- Frobenius -------------------------------------------------------------------------
def test_galois_fermat_gf2():
    g = galois_image(parse_cubic(FERMAT, F2))
    assert (g.order, g.label, g.fixed_lines) == (2, "A1^3", 3)


def test_galois_split_surface_is_trivial():
    g = galois_image(parse_cubic(FERMAT, F4))
    assert g.order == 1 and g.fixed_lines == 27


def test_galois_perm_preserves_incidence():
    S = find_lines(parse_cubic(CLEBSCH_LIKE, F2))
    p = galois_image(S).line_perm
    assert np.array_equal(S.graph[np.ix_(p, p)], S.graph)
