"""Explicit cubic surfaces over GF(2^k)."""
from .form import CubicForm, cubic_from_coeffs, format_cubic, parse_cubic
from .lines import GaloisImage, SurfaceLines, find_lines, galois_image, is_smooth, label_lines

FERMAT = "x^3+y^3+z^3+t^3"
CLEBSCH_LIKE = "x^2*t+y^2*z+z^2*y+t^2*x"

__all__ = [
    "CubicForm", "cubic_from_coeffs", "format_cubic", "parse_cubic",
    "GaloisImage", "SurfaceLines", "find_lines", "galois_image", "is_smooth", "label_lines",
    "FERMAT", "CLEBSCH_LIKE",
]
