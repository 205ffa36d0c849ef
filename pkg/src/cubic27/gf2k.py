"""Arithmetic in GF(2^k) for 1 <= k <= 12.

Elements are plain ints holding the coefficient bitmask in the polynomial
basis.  Every field uses the numerically smallest irreducible modulus of its
degree, and ``g`` (the smallest primitive element) fixes the log tables and
the ``g^j`` literal syntax.  ``FieldElem`` wraps an int for callers that want
operator overloading; the heavy modules work on raw ints and numpy arrays.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache, total_ordering

import numpy as np

from .errors import (
    FieldMismatch,
    InputError,
    NoFifthRoot,
    NonDividingDegree,
    NotInSubfield,
    ZeroInverse,
)

MAX_DEGREE = 12


# --- GF(2)[x] polynomials as bitmasks ---------------------------------------
def clmul(a: int, b: int) -> int:
    """Carry-less product of two GF(2)[x] bitmasks."""
    r = 0
    while b:
        if b & 1:
            r ^= a
        a <<= 1
        b >>= 1
    return r


def poly_mod(a: int, m: int) -> int:
    dm = m.bit_length() - 1
    while a and a.bit_length() - 1 >= dm:
        a ^= m << (a.bit_length() - 1 - dm)
    return a


def is_irreducible(poly: int) -> bool:
    """Trial division by every polynomial of degree 1..deg-1."""
    deg = poly.bit_length() - 1
    if deg < 1:
        return False
    for d in range(1, deg):
        for f in range(1 << d, 1 << (d + 1)):
            if poly_mod(poly, f) == 0:
                return False
    return True


@lru_cache(maxsize=None)
def smallest_irreducible(k: int) -> int:
    for poly in range(1 << k, 1 << (k + 1)):
        if is_irreducible(poly):
            return poly
    raise AssertionError("unreachable: irreducibles exist in every degree")


class FieldSpec:
    """GF(2^k) with its canonical modulus, generator and lookup tables."""

    def __init__(self, k: int):
        if not 1 <= k <= MAX_DEGREE:
            raise InputError(f"extension degree must be in 1..{MAX_DEGREE}, got {k}")
        self.k = k
        self.order = 1 << k
        self.modulus = smallest_irreducible(k)
        if not is_irreducible(self.modulus):
            raise AssertionError(f"modulus {self.modulus:#x} is reducible")
        q1 = self.order - 1
        self.gen = self._find_generator()
        # exp has zeros past 2*(q-1) so that exp[log[a] + log[b]] is 0 when a or b is 0
        exp = np.zeros(4 * q1 + 1, dtype=np.int64)
        x = 1
        for i in range(q1):
            exp[i] = x
            exp[i + q1] = x
            x = poly_mod(clmul(x, self.gen), self.modulus)
        log = np.zeros(self.order, dtype=np.int64)
        log[0] = 2 * q1
        for i in range(q1):
            log[exp[i]] = i
        inv = np.zeros(self.order, dtype=np.int64)
        for a in range(1, self.order):
            inv[a] = exp[(q1 - log[a]) % q1]
        self.exp, self.log, self.inv_table = exp, log, inv
        for arr in (exp, log, inv):
            arr.setflags(write=False)
        self._frob_cache: dict[int, np.ndarray] = {}

    def _find_generator(self) -> int:
        q1 = self.order - 1
        if q1 == 1:
            return 1
        for cand in range(2, self.order):
            x, n = cand, 1
            while x != 1:
                x = poly_mod(clmul(x, cand), self.modulus)
                n += 1
            if n == q1:
                return cand
        raise AssertionError("multiplicative group is cyclic")

    # identity is by degree: there is exactly one FieldSpec per k
    def __eq__(self, other):
        return isinstance(other, FieldSpec) and other.k == self.k

    def __hash__(self):
        return hash(("GF2k", self.k))

    def __repr__(self):
        return f"GF(2^{self.k})"

    def __reduce__(self):
        return (field, (self.k,))

    # --- scalar ops on raw ints ---
    def mul(self, a: int, b: int) -> int:
        return int(self.exp[self.log[a] + self.log[b]])

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroInverse("0 has no inverse")
        return int(self.inv_table[a])

    def div(self, a: int, b: int) -> int:
        return self.mul(a, self.inv(b))

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroInverse("0 has no inverse")
            return 1 if e == 0 else 0
        q1 = self.order - 1
        return int(self.exp[(int(self.log[a]) * e) % q1])

    def frob(self, a: int, j: int = 1) -> int:
        return self.pow(a, 1 << (j % self.k))

    def gpow(self, j: int) -> int:
        """g**j."""
        return int(self.exp[j % (self.order - 1)])

    # --- vectorized ops on int arrays ---
    def mul_arr(self, a, b):
        return self.exp[self.log[a] + self.log[b]]

    def inv_arr(self, a):
        a = np.asarray(a)
        if np.any(a == 0):
            raise ZeroInverse("0 has no inverse")
        return self.inv_table[a]

    def frob_table(self, j: int = 1) -> np.ndarray:
        """Array t with t[a] = a^(2^j)."""
        j %= self.k
        if j not in self._frob_cache:
            t = np.array([self.frob(a, j) for a in range(self.order)], dtype=np.int64)
            t.setflags(write=False)
            self._frob_cache[j] = t
        return self._frob_cache[j]

    def elements(self) -> np.ndarray:
        return np.arange(self.order, dtype=np.int64)

    def elem(self, bits: int) -> "FieldElem":
        return FieldElem(int(bits), self)

    # --- literals ---
    def literal(self, a: int) -> str:
        a = int(a)
        if a in (0, 1):
            return str(a)
        return f"g^{int(self.log[a])}"

    def parse_literal(self, text: str) -> int:
        text = text.strip()
        if text in ("0", "1"):
            return int(text)
        m = re.fullmatch(r"g\s*(?:\^\s*(\d+))?", text)
        if not m:
            raise InputError(f"bad field literal {text!r}")
        return self.gpow(int(m.group(1) or 1))


@lru_cache(maxsize=None)
def field(k: int) -> FieldSpec:
    return FieldSpec(k)


def parse_field(text: str) -> FieldSpec:
    """Parse ``GF(2^k)``; ``GF(q)`` with q a power of two is also accepted."""
    t = text.replace(" ", "")
    m = re.fullmatch(r"GF\(2\^(\d+)\)", t) or re.fullmatch(r"GF\(2\*\*(\d+)\)", t)
    if m:
        return field(int(m.group(1)))
    m = re.fullmatch(r"GF\((\d+)\)", t)
    if m:
        q = int(m.group(1))
        if q >= 2 and q & (q - 1) == 0:
            return field(q.bit_length() - 1)
    raise InputError(f"bad field spec {text!r}; expected GF(2^k)")


@total_ordering
@dataclass(frozen=True, eq=False)
class FieldElem:
    bits: int
    spec: FieldSpec

    def __post_init__(self):
        if not 0 <= self.bits < self.spec.order:
            raise ValueError(f"{self.bits} is not an element of {self.spec}")

    def _other(self, other) -> int:
        if isinstance(other, FieldElem):
            if other.spec != self.spec:
                raise FieldMismatch(f"{self.spec} vs {other.spec}")
            return other.bits
        if other in (0, 1):
            return int(other)
        return NotImplemented

    def __add__(self, other):
        o = self._other(other)
        return NotImplemented if o is NotImplemented else FieldElem(self.bits ^ o, self.spec)

    __radd__ = __add__
    __sub__ = __add__
    __rsub__ = __add__

    def __neg__(self):
        return self

    def __mul__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec.mul(self.bits, o), self.spec)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._other(other)
        if o is NotImplemented:
            return o
        return FieldElem(self.spec.div(self.bits, o), self.spec)

    def __pow__(self, e: int):
        return FieldElem(self.spec.pow(self.bits, e), self.spec)

    def __eq__(self, other):
        if isinstance(other, FieldElem):
            return self.spec == other.spec and self.bits == other.bits
        if isinstance(other, int):
            return self.bits == other and other in (0, 1)
        return NotImplemented

    def __lt__(self, other):
        return self.bits < self._other(other)

    def __hash__(self):
        return hash((self.spec.k, self.bits))

    def __bool__(self):
        return self.bits != 0

    def __repr__(self):
        return self.spec.literal(self.bits)


# --- the operations other modules build on ---------------------------------
def _check_same(a: FieldElem, b: FieldElem):
    if a.spec != b.spec:
        raise FieldMismatch(f"{a.spec} vs {b.spec}")


def mul(a: FieldElem, b: FieldElem) -> FieldElem:
    """Carry-less multiply, then reduce by the modulus."""
    _check_same(a, b)
    return FieldElem(poly_mod(clmul(a.bits, b.bits), a.spec.modulus), a.spec)


def inv(a: FieldElem) -> FieldElem:
    if a.bits == 0:
        raise ZeroInverse("0 has no inverse")
    # a^(q-2) by square-and-multiply on the reference product
    result, base, e = FieldElem(1, a.spec), a, a.spec.order - 2
    while e:
        if e & 1:
            result = mul(result, base)
        base = mul(base, base)
        e >>= 1
    return result


def frobenius(a: FieldElem, j: int) -> FieldElem:
    if j < 0:
        raise ValueError("iteration count must be non-negative")
    x = a
    for _ in range(j % a.spec.k):
        x = mul(x, x)
    return x


def fifth_roots(spec: FieldSpec) -> list[FieldElem]:
    """Nontrivial fifth roots of unity, sorted by bitmask."""
    return [FieldElem(x, spec) for x in range(2, spec.order) if spec.pow(x, 5) == 1]


def smallest_fifth_root(spec: FieldSpec) -> int:
    roots = fifth_roots(spec)
    if not roots:
        raise NoFifthRoot(f"{spec} has no nontrivial fifth root of unity")
    return roots[0].bits


@lru_cache(maxsize=None)
def _embedding_table(sub_k: int, sup_k: int) -> np.ndarray:
    sub, sup = field(sub_k), field(sup_k)
    if sup_k % sub_k:
        raise NonDividingDegree(f"{sub} does not embed in {sup}")

    def eval_modulus(x):
        acc = 0
        for i in range(sub.k, -1, -1):
            acc = sup.mul(acc, x) ^ ((sub.modulus >> i) & 1)
        return acc

    root = next(x for x in range(sup.order) if eval_modulus(x) == 0)
    powers = [1]
    for _ in range(sub.k - 1):
        powers.append(sup.mul(powers[-1], root))
    table = np.zeros(sub.order, dtype=np.int64)
    for a in range(sub.order):
        v = 0
        for i in range(sub.k):
            if (a >> i) & 1:
                v ^= powers[i]
        table[a] = v
    table.setflags(write=False)
    return table


def embedding_table(sub: FieldSpec, sup: FieldSpec) -> np.ndarray:
    """Array t with t[a] the image of a under the canonical embedding."""
    return _embedding_table(sub.k, sup.k)


@lru_cache(maxsize=None)
def _restriction_table(sub_k: int, sup_k: int) -> np.ndarray:
    t = _embedding_table(sub_k, sup_k)
    r = np.full(1 << sup_k, -1, dtype=np.int64)
    r[t] = np.arange(len(t))
    r.setflags(write=False)
    return r


def restriction_table(sub: FieldSpec, sup: FieldSpec) -> np.ndarray:
    """Inverse of the embedding; -1 marks elements outside the subfield."""
    return _restriction_table(sub.k, sup.k)


def restrict(sub: FieldSpec, sup: FieldSpec, values):
    """Pull values of ``sup`` back into ``sub``; raises if any lies outside."""
    r = restriction_table(sub, sup)[np.asarray(values, dtype=np.int64)]
    if np.any(r < 0):
        raise NotInSubfield(f"value outside {sub}")
    return r


def embed(sub: FieldSpec, sup: FieldSpec, a: FieldElem) -> FieldElem:
    if a.spec != sub:
        raise FieldMismatch(f"{a} is not in {sub}")
    return FieldElem(int(embedding_table(sub, sup)[a.bits]), sup)


def quadratic_pair(spec16: FieldSpec) -> tuple[FieldElem, FieldElem]:
    """(xi + xi^4, xi^2 + xi^3) for the smallest fifth root xi."""
    xi = smallest_fifth_root(spec16)
    p = spec16.pow
    return (FieldElem(xi ^ p(xi, 4), spec16), FieldElem(p(xi, 2) ^ p(xi, 3), spec16))
