"""Time each hot kernel under the numba and numpy backends.

    python3 benchmarks/bench_kernels.py [--repeat N]

numba timings exclude the first (compiling) call.
"""
import argparse
import timeit

import numpy as np

from cubic27 import _kernels, picweyl
from cubic27.cubic import parse_cubic
from cubic27.cubic.form import QUAD_EXPONENTS, partials, substitution_tables
from cubic27.gf2k import field


def cases():
    gens = picweyl.weyl_group().gens
    F8, F16 = field(3), field(4)
    rng = np.random.default_rng(0)
    coef = rng.integers(0, F8.order, size=20)
    T = rng.integers(0, F8.order, size=(4096, 4, 4))
    factors, idx3 = substitution_tables()
    D = partials(parse_cubic("x^3+y^3+z^3+t^3", field(8)).coeffs)
    P = rng.integers(0, F16.order, size=(20000, 5, 4))
    return {
        "perm_closure W(E6)": lambda: _kernels.perm_closure(gens, 60000),
        "singular_scan GF(256)": lambda: _kernels.singular_scan(D, QUAD_EXPONENTS, field(8)),
        "substitute_cubic 4096": lambda: _kernels.substitute_cubic(coef, factors, idx3, T, F8),
        "frame_solve 20000": lambda: _kernels.frame_solve(P, F16),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    backends = _kernels.available()
    print("kernel\t" + "\t".join(f"{b} (s)" for b in backends))
    for name, fn in cases().items():
        row = []
        for b in backends:
            with _kernels.use_backend(b):
                fn()
                row.append(min(timeit.repeat(fn, number=1, repeat=args.repeat)))
        print(name + "\t" + "\t".join(f"{t:.4f}" for t in row))


if __name__ == "__main__":
    main()
