"""Cubic surfaces over GF(2^k): 27 lines, automorphism groups, Galois images
and order-5 quadric models."""
from .gf2k import FieldElem, FieldSpec, field, parse_field
from .cubic import FERMAT, CLEBSCH_LIKE, CubicForm, find_lines, galois_image, is_smooth, parse_cubic
from .cubic.aut import automorphisms, is_isomorphic
from .picweyl import weyl_group
from .quadric import QuadricModel, count_orbit_classes, split, weil
from .construct import MarkedQuadric, blowdown_data, blowup_to_cubic, conic_fibers, roundtrip

__all__ = [
    "FieldElem", "FieldSpec", "field", "parse_field",
    "FERMAT", "CLEBSCH_LIKE", "CubicForm", "find_lines", "galois_image", "is_smooth", "parse_cubic",
    "automorphisms", "is_isomorphic", "weyl_group",
    "QuadricModel", "count_orbit_classes", "split", "weil",
    "MarkedQuadric", "blowdown_data", "blowup_to_cubic", "conic_fibers", "roundtrip",
]
