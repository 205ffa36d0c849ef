"""Hot loops with a numba implementation and a pure-numpy fallback.

The backend is picked once at import from ``CUBIC27_BACKEND`` (``numba`` or
``numpy``).  Without the variable numba is used when it imports cleanly.
Callers go through the wrappers below, which accept FieldSpec objects and
never see which backend ran.  ``use_backend`` switches temporarily, which
the tests and the benchmark rely on.
"""
from __future__ import annotations

import os
from contextlib import contextmanager

import numpy as np

from ..errors import Overflow
from . import _numpy

try:
    from . import _numba
except ImportError:  # pragma: no cover - depends on the environment
    _numba = None

_requested = os.environ.get("CUBIC27_BACKEND", "").strip().lower()
if _requested not in ("", "numba", "numpy"):
    raise ImportError(f"CUBIC27_BACKEND must be 'numba' or 'numpy', got {_requested!r}")
if _requested == "numba" and _numba is None:
    raise ImportError("CUBIC27_BACKEND=numba but numba is not importable")
_backend = _requested or ("numba" if _numba is not None else "numpy")


def backend() -> str:
    return _backend


def available() -> list[str]:
    return ["numpy"] + (["numba"] if _numba is not None else [])


@contextmanager
def use_backend(name: str):
    global _backend
    if name not in available():
        raise ValueError(f"backend {name!r} not available")
    old, _backend = _backend, name
    try:
        yield
    finally:
        _backend = old


def _impl():
    return _numba if _backend == "numba" else _numpy


# fixed seed: the hash only has to spread permutations, not be secret
_RND = np.random.default_rng(20240611).integers(1, 2**63, size=64, dtype=np.uint64) | np.uint64(1)


def perm_closure(gens: np.ndarray, cap: int) -> np.ndarray:
    """All products of ``gens`` (rows of a uint8 array), lexicographically sorted."""
    gens = np.ascontiguousarray(gens, dtype=np.uint8)
    n = gens.shape[1]
    if n > len(_RND):
        raise ValueError(f"degree {n} exceeds {len(_RND)}")
    elems, count = _impl().perm_closure(gens, int(cap), _RND[:n])
    if count < 0:
        raise Overflow(cap)
    elems = np.ascontiguousarray(elems)
    return elems[np.lexsort(elems.T[::-1])]


def singular_scan(qcoef: np.ndarray, qexp: np.ndarray, F) -> bool:
    return bool(_impl().singular_scan(
        np.ascontiguousarray(qcoef, dtype=np.int64), np.ascontiguousarray(qexp, dtype=np.int64),
        F.exp, F.log, F.inv_table, F.order))


def substitute_cubic(coef, factors, idx3, T, F) -> np.ndarray:
    T = np.ascontiguousarray(T, dtype=np.int64).reshape(-1, 4, 4)
    return _impl().substitute_cubic(
        np.ascontiguousarray(coef, dtype=np.int64), factors, idx3, T, F.exp, F.log)


def frame_solve(P, F) -> tuple[np.ndarray, np.ndarray]:
    P = np.ascontiguousarray(P, dtype=np.int64).reshape(-1, 5, 4)
    return _impl().frame_solve(P, F.exp, F.log, F.inv_table)
