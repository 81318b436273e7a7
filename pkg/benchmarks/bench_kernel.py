"""Compare the compiled and pure-Python Weyl product kernels.

    python3 benchmarks/bench_kernel.py [--n 4] [--terms 40] [--degree 3] [--repeat 5]

Both kernels must produce identical term dicts; the script exits 1 if not.
"""

import argparse
import random
import sys
import timeit
from fractions import Fraction

from conequant import _pykernel
from conequant.scalar import QI

try:
    from conequant import _ckernel
except ImportError:
    _ckernel = None


def random_terms(rng, n, count, degree):
    out = {}
    while len(out) < count:
        a = tuple(rng.randint(0, degree) for _ in range(n))
        alpha = tuple(rng.randint(0, degree) for _ in range(n))
        out[(a, alpha)] = QI(Fraction(rng.randint(-9, 9), rng.randint(1, 5)), rng.randint(-3, 3))
    return {k: v for k, v in out.items() if v}


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--n", type=int, default=4)
    p.add_argument("--terms", type=int, default=40)
    p.add_argument("--degree", type=int, default=3)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=1)
    args = p.parse_args(argv)

    rng = random.Random(args.seed)
    left = random_terms(rng, args.n, args.terms, args.degree)
    right = random_terms(rng, args.n, args.terms, args.degree)

    kernels = {"python": _pykernel.weyl_mul_terms}
    if _ckernel is not None:
        kernels["cython"] = _ckernel.weyl_mul_terms
    else:
        print("compiled kernel not built; timing the fallback only")

    results = {name: f(left, right) for name, f in kernels.items()}
    if len({frozenset(r.items()) for r in results.values()}) != 1:
        print("MISMATCH between kernels")
        return 1

    print(f"n={args.n} terms={len(left)}x{len(right)} degree<={args.degree} -> {len(results['python'])} terms")
    best = {}
    for name, f in kernels.items():
        t = min(timeit.repeat(lambda: f(left, right), number=1, repeat=args.repeat))
        best[name] = t
        print(f"{name:>7}: {t * 1e3:9.2f} ms")
    if "cython" in best:
        print(f"speedup: {best['python'] / best['cython']:.2f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
