import numpy as np
import pytest

from cubic27 import linalg, permgrp
from cubic27.cubic import CLEBSCH_LIKE, FERMAT, galois_image, parse_cubic
from cubic27.cubic.aut import automorphisms, gl4_oracle, is_isomorphic, maps_to
from cubic27.errors import FieldMismatch
from cubic27.gf2k import field
from cubic27.suites import collineation_matrix

F2, F4 = field(1), field(2)


@pytest.fixture(scope="module")
def clebsch2():
    return automorphisms(parse_cubic(CLEBSCH_LIKE, F2))


def test_every_element_preserves_the_form(clebsch2):
    C = clebsch2.cubic
    assert all(maps_to(M, C, C) for M in clebsch2.matrices)


def test_matrices_and_perms_are_a_group(clebsch2):
    P = clebsch2.perms.astype(np.int64)
    prods = np.take_along_axis(P[:, None, :].repeat(len(P), 1), P[None, :, :].repeat(len(P), 0), axis=2)
    seen = {tuple(r) for r in P.tolist()}
    assert all(tuple(r) in seen for r in prods.reshape(-1, 27)[::97].tolist())
    assert len(seen) == clebsch2.order


def test_action_preserves_incidence(clebsch2):
    S = clebsch2.lines
    for p in clebsch2.perms[::37]:
        lp = S.class_perm_to_line_perm(p)
        assert np.array_equal(S.graph[np.ix_(lp, lp)], S.graph)


def test_frobenius_commutes_with_aut(clebsch2):
    fr = galois_image(clebsch2.lines).perm.astype(np.int64)
    P = clebsch2.perms.astype(np.int64)
    assert np.array_equal(fr[P], P[:, fr])


def test_gl4_oracle_matches_gf2(clebsch2):
    # over GF(2) projective and linear automorphisms coincide
    mats = clebsch2.matrices
    mats = mats[np.lexsort(mats.reshape(len(mats), -1).T[::-1])]
    assert np.array_equal(gl4_oracle(clebsch2.cubic), mats)


def test_gl4_oracle_rejects_larger_fields():
    with pytest.raises(ValueError):
        gl4_oracle(parse_cubic(FERMAT, F4))


def test_aut_label_is_s6(clebsch2):
    assert clebsch2.label == "S6"
    assert permgrp.identify_group(clebsch2.handle) == "S6"


def test_isomorphism_witness_over_gf4():
    C1, C2 = parse_cubic(CLEBSCH_LIKE, F4), parse_cubic(FERMAT, F4)
    T = is_isomorphic(C1, C2)
    assert T is not None and maps_to(T, C1, C2)
    assert linalg.det(T.array(), F4) != 0


def test_not_isomorphic_over_gf2():
    assert is_isomorphic(parse_cubic(CLEBSCH_LIKE, F2), parse_cubic(FERMAT, F2)) is None


def test_isomorphism_field_mismatch():
    with pytest.raises(FieldMismatch):
        is_isomorphic(parse_cubic(FERMAT, F2), parse_cubic(FERMAT, F4))


# the literal collineation [x+y : w x + w^2 y : z+t : w z + w^2 t] needs the
# y <-> t swap P to relate the two forms; these pin the corrected statement
P_YT = np.eye(4, dtype=np.int64)[[0, 3, 2, 1]]


@pytest.mark.parametrize("omega", [2, 3])
def test_collineation_with_swap(omega):
    C, Fe = parse_cubic(CLEBSCH_LIKE, F4), parse_cubic(FERMAT, F4)
    M = collineation_matrix(omega)
    Minv = linalg.inverse(M, F4)
    assert maps_to(linalg.matmul(Minv, P_YT, F4), C, Fe)
    assert maps_to(linalg.matmul(P_YT, M, F4), Fe, C)


@pytest.mark.parametrize("omega", [2, 3])
def test_literal_collineation_does_not_map(omega):
    C, Fe = parse_cubic(CLEBSCH_LIKE, F4), parse_cubic(FERMAT, F4)
    M = collineation_matrix(omega)
    assert not maps_to(M, C, Fe)
    assert not maps_to(linalg.inverse(M, F4), C, Fe)
