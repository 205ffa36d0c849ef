"""Reference values checked by the verification suites and the acceptance tests.

Every number a suite compares against lives here, with a short note on
where it comes from.  Nothing in this table is computed by the toolkit.
"""
from types import MappingProxyType

FERMAT = "x^3+y^3+z^3+t^3"
CLEBSCH_LIKE = "x^2*t+y^2*z+z^2*y+t^2*x"

_TABLE = {
    # order of the Weyl group of E6 and of its simple index-2 subgroup
    "weyl_order": 51840,
    "weyl_derived_order": 25920,
    # (class label, class size, centralizer order) for the classes of order 2, 5, 10
    "census": (
        ("A1", 36, 1440),
        ("A1^4", 45, 1152),
        ("A1^2", 270, 192),
        ("A1^3", 540, 96),
        ("A4", 5184, 10),
        ("A4xA1", 5184, 10),
    ),
    # (fixed lines, swapped skew pairs, swapped meeting pairs) per involution class
    "involution_profiles": {
        "A1": (15, 6, 0),
        "A1^2": (7, 8, 2),
        "A1^3": (3, 6, 6),
        "A1^4": (3, 0, 12),
    },
    # centralizer of an order-5 element; class of the involutions commuting with one
    "order5_centralizer": 10,
    "order5_involution_class": "A1",
    # automorphism groups: (cubic, field degree) -> (order, label)
    "aut": {
        ("fermat", 2): (25920, "PSU4(F2)"),
        ("fermat", 1): (48, "Z/2xS4"),
        ("fermat", 3): (48, "Z/2xS4"),
        ("clebsch_like", 1): (720, "S6"),
        ("clebsch_like", 2): (25920, "PSU4(F2)"),
    },
    # Frobenius images: (cubic, field degree) -> (order, class label, fixed lines)
    "galois": {
        ("clebsch_like", 1): (2, "A1", 15),
        ("fermat", 2): (1, "identity", 27),
    },
    # number of equivalence classes of general-position orbits of order-5 elements
    "orbit_classes": {
        ("split", 2): 1,
        ("split", 4): 1,
        ("weil", 1): 1,
    },
    # line-class stabilizer inside the simple group of order 25920
    "line_stabilizer_order": 960,
    "s6_order": 720,
    # skew pairs of lines have this many common neighbours
    "skew_common_neighbours": 5,
    # any two A6 subgroups of W(E6) are conjugate
    "a6_conjugacy_classes": 1,
}

EXPECTED = MappingProxyType(_TABLE)

CUBICS = MappingProxyType({"fermat": FERMAT, "clebsch_like": CLEBSCH_LIKE})
