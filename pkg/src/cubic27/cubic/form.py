"""Cubic forms in x, y, z, t: coefficient vectors, parsing and printing.

Monomials are listed in graded-lex order with x > y > z > t, so index 0 is
x^3 and index 19 is t^3.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache
from itertools import product

import numpy as np

from .. import linalg
from ..errors import CubicSyntaxError, FieldMismatch, WrongDegree, ZeroForm
from ..gf2k import FieldSpec, embedding_table, restrict

VARS = "xyzt"


def _exps(deg: int) -> list[tuple[int, ...]]:
    return sorted((e for e in product(range(deg + 1), repeat=4) if sum(e) == deg), reverse=True)


MONOMIALS = _exps(3)
QUAD_MONOMIALS = _exps(2)
MONO_INDEX = {e: i for i, e in enumerate(MONOMIALS)}
QUAD_INDEX = {e: i for i, e in enumerate(QUAD_MONOMIALS)}
EXPONENTS = np.array(MONOMIALS, dtype=np.int64)
QUAD_EXPONENTS = np.array(QUAD_MONOMIALS, dtype=np.int64)


@lru_cache(maxsize=None)
def substitution_tables() -> tuple[np.ndarray, np.ndarray]:
    """Sorted variable triple per monomial, and the monomial index of x_d x_e x_f."""
    factors = np.array([sorted(sum(([v] * e for v, e in enumerate(m)), [])) for m in MONOMIALS], dtype=np.int64)
    idx3 = np.zeros((4, 4, 4), dtype=np.int64)
    for d, e, f in product(range(4), repeat=3):
        ex = [0, 0, 0, 0]
        for v in (d, e, f):
            ex[v] += 1
        idx3[d, e, f] = MONO_INDEX[tuple(ex)]
    return factors, idx3


def monomial_str(e) -> str:
    parts = []
    for v, k in zip(VARS, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class CubicForm:
    coeffs: tuple[int, ...]
    spec: FieldSpec

    def array(self) -> np.ndarray:
        return np.array(self.coeffs, dtype=np.int64)

    def __str__(self):
        return format_cubic(self)

    def __repr__(self):
        return f"CubicForm({format_cubic(self)!r} over {self.spec})"


def cubic_from_coeffs(coeffs, F: FieldSpec) -> CubicForm:
    c = np.asarray(coeffs, dtype=np.int64)
    if c.shape != (20,):
        raise ValueError("a cubic form has 20 coefficients")
    if not np.any(c):
        raise ZeroForm("the cubic form is identically zero")
    return CubicForm(tuple(int(x) for x in linalg.normalize_vec(c, F)), F)


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[xyztg])|(?P<op>[+*^()]))")


def _tokens(text: str):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise CubicSyntaxError(f"unexpected character at {pos}: {text[pos:pos + 10]!r}")
        out.append((m.lastgroup, m.group(m.lastgroup), pos))
        pos = m.end()
    return out


def parse_cubic(text: str, F: FieldSpec) -> CubicForm:
    """Parse sums of products of x, y, z, t, 0, 1 and g^j, with ^ for powers."""
    toks = _tokens(text)
    if not toks:
        raise CubicSyntaxError("empty input")
    coeffs = np.zeros(20, dtype=np.int64)
    i = 0

    def expect_exponent():
        nonlocal i
        if i < len(toks) and toks[i][1] == "^":
            if i + 1 >= len(toks) or toks[i + 1][0] != "num":
                raise CubicSyntaxError(f"exponent expected at {toks[i][2]}")
            i += 2
            return int(toks[i - 1][1])
        return None

    while True:
        coef, ex, seen = 1, [0, 0, 0, 0], False
        while True:
            if i >= len(toks):
                raise CubicSyntaxError("term expected")
            kind, val, pos = toks[i]
            i += 1
            if kind == "name" and val in VARS:
                e = expect_exponent()
                ex[VARS.index(val)] += 1 if e is None else e
            elif kind == "name" and val == "g":
                e = expect_exponent()
                coef = F.mul(coef, F.gpow(1 if e is None else e))
            elif kind == "num":
                if val not in ("0", "1"):
                    raise CubicSyntaxError(f"coefficient {val} at {pos}: only 0, 1 and g^j are allowed")
                coef = F.mul(coef, int(val))
            else:
                raise CubicSyntaxError(f"unexpected {val!r} at {pos}")
            seen = True
            if i < len(toks) and toks[i][1] == "*":
                i += 1
                continue
            break
        if seen:
            if sum(ex) != 3:
                raise WrongDegree(f"monomial {monomial_str(ex)} has degree {sum(ex)}, expected 3")
            coeffs[MONO_INDEX[tuple(ex)]] ^= coef
        if i == len(toks):
            break
        if toks[i][1] != "+":
            raise CubicSyntaxError(f"'+' expected at {toks[i][2]}")
        i += 1
    return cubic_from_coeffs(coeffs, F)


def format_cubic(C: CubicForm) -> str:
    terms = []
    for c, e in zip(C.coeffs, MONOMIALS):
        if c == 0:
            continue
        m = monomial_str(e)
        terms.append(m if c == 1 else f"{C.spec.literal(c)}*{m}")
    return "+".join(terms)


# --- evaluation -----------------------------------------------------------------
def embed_coeffs(C: CubicForm, L: FieldSpec) -> np.ndarray:
    return embedding_table(C.spec, L)[C.array()]


def same_form(A: CubicForm, B: CubicForm) -> bool:
    if A.spec != B.spec:
        raise FieldMismatch(f"{A.spec} vs {B.spec}")
    return A.coeffs == B.coeffs


def partials(coef) -> np.ndarray:
    """(4, 10) quadric coefficients of the partial derivatives (char 2)."""
    out = np.zeros((4, 10), dtype=np.int64)
    for c, e in zip(np.asarray(coef), MONOMIALS):
        if c == 0:
            continue
        for v in range(4):
            if e[v] % 2 == 1:  # d/dx x^e = e x^(e-1), nonzero only for odd e
                d = list(e)
                d[v] -= 1
                out[v, QUAD_INDEX[tuple(d)]] ^= c
    return out


def _monomial_values(P, exps, F: FieldSpec) -> np.ndarray:
    P = np.asarray(P, dtype=np.int64)
    out = np.ones(P.shape[:-1] + (len(exps),), dtype=np.int64)
    for v in range(4):
        for k in range(1, int(exps[:, v].max()) + 1):
            sel = exps[:, v] >= k
            out[..., sel] = F.mul_arr(out[..., sel], P[..., v, None])
    return out


def eval_form(coef, P, F: FieldSpec, exps=EXPONENTS) -> np.ndarray:
    """Values of a form at points P (..., 4)."""
    vals = _monomial_values(P, exps, F)
    return np.bitwise_xor.reduce(F.mul_arr(vals, np.asarray(coef, dtype=np.int64)), axis=-1)


def gradient(coef, P, F: FieldSpec) -> np.ndarray:
    """(..., 4) partial derivatives at points P."""
    D = partials(coef)
    vals = _monomial_values(P, QUAD_EXPONENTS, F)
    return np.stack([np.bitwise_xor.reduce(F.mul_arr(vals, D[v]), axis=-1) for v in range(4)], axis=-1)


def substitute(coef, T, F: FieldSpec) -> np.ndarray:
    """Coefficients of F(T x) for one matrix or a stack."""
    from .. import _kernels

    factors, idx3 = substitution_tables()
    T = np.asarray(T, dtype=np.int64)
    out = _kernels.substitute_cubic(coef, factors, idx3, T, F)
    return out[0] if T.ndim == 2 else out


def proportional(A, B, F: FieldSpec) -> np.ndarray:
    """Row-wise test that A ~ B up to a nonzero scalar (both nonzero)."""
    A = np.atleast_2d(np.asarray(A, dtype=np.int64))
    B = np.atleast_2d(np.asarray(B, dtype=np.int64))
    nzA = np.any(A != 0, axis=-1)
    nzB = np.any(B != 0, axis=-1)
    eq = np.all(linalg.normalize_rows(A, F) == linalg.normalize_rows(B, F), axis=-1)
    return eq & nzA & nzB


def restrict_form(coef, sub: FieldSpec, sup: FieldSpec) -> np.ndarray:
    return restrict(sub, sup, coef)
