"""Numbered acceptance criteria.  Every comparison is exact; the only
tolerance is the wall-clock budget given on each marker."""
import time

import pytest

from cubic27 import suites
from cubic27.cubic.aut import maps_to


def _run(fn, budget):
    t0 = time.perf_counter()
    checks = fn()
    elapsed = time.perf_counter() - t0
    failed = [c for c in checks if not c["ok"]]
    assert not failed, "\n".join(f"{c['name']}: computed {c['computed']!r}, expected {c['expected']!r}" for c in failed)
    assert elapsed < budget, f"took {elapsed:.1f} s, budget {budget} s"
    return checks


@pytest.mark.criterion(1, "Weyl group order 51840, derived subgroup 25920", 30)
def test_c01_weyl_census():
    _run(suites.suite_weyl, 30)


@pytest.mark.criterion(2, "class census of orders 2/5/10 with centralizers and char polys", 120)
def test_c02_census():
    _run(suites.suite_census, 120)


@pytest.mark.criterion(3, "fixed/skew/meeting profiles of all 891 involutions", 120)
def test_c03_involution_profiles():
    _run(suites.suite_involutions, 120)


@pytest.mark.criterion(4, "order-5 centralizers cyclic of order 10; related involutions are A1", 120)
def test_c04_order5_structure():
    _run(suites.suite_order5, 120)


@pytest.mark.criterion(5, "automorphism groups, GF(2) oracle agrees element by element", 600)
def test_c05_automorphism_groups():
    _run(suites.suite_aut, 600)


@pytest.mark.criterion(6, "Frobenius images on the 27 line classes", 60)
def test_c06_galois_images():
    _run(suites.suite_galois, 60)


@pytest.mark.criterion(7, "one class of general-position order-5 orbits on each quadric model", 600)
def test_c07_orbit_uniqueness():
    _run(suites.suite_orbits, 600)


@pytest.mark.criterion(8, "blowdown/blowup pipeline recovers both cubics", 300)
def test_c08_pipeline():
    _run(suites.suite_pipeline, 300)


@pytest.mark.criterion(9, "literal collineation [x+y:wx+w^2y:z+t:wz+w^2t] maps the cubic to Fermat", 1)
def test_c09_collineation():
    # the criterion as written; see the decisions log for why it cannot hold
    t0 = time.perf_counter()
    E = suites._cubic("clebsch_like", 2)
    Fm = suites._cubic("fermat", 2)
    M = suites.collineation_matrix(E.spec.gen)
    ok = maps_to(M, E, Fm)
    assert time.perf_counter() - t0 < 1
    assert ok, "Fermat(Mx) is not a multiple of the cubic for the literal matrix"


@pytest.mark.criterion(10, "no isomorphism to Fermat over GF(2)", 300)
def test_c10_non_isomorphism():
    _run(suites.suite_noniso, 300)


@pytest.mark.criterion(11, "line stabilizer of order 960; S6 sits in the simple group", 120)
def test_c11_stabilizer():
    _run(suites.suite_stabilizer, 120)


@pytest.mark.extended
@pytest.mark.criterion(12, "all A6 subgroups of W(E6) are conjugate", 1800)
def test_c12_a6_conjugacy():
    _run(suites.suite_a6, 1800)

