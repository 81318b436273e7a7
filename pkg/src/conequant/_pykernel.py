"""Pure-Python Weyl-algebra product kernel.

Terms are dicts ``{(z_exponents, d_exponents): coeff}`` describing the
normal form ``sum c * z^a d^alpha`` (derivatives on the right).  The product
of two monomials follows from the Leibniz rule::

    d^alpha z^b = sum_{g <= alpha, g <= b} prod_i C(alpha_i, g_i) b_i!/(b_i-g_i)!
                  z^(b-g) d^(alpha-g)
"""

from itertools import product
from math import comb


def _falling(b, g):
    out = 1
    for j in range(g):
        out *= b - j
    return out


def leibniz_expansion(alpha, b):
    """List of ``(multiplier, gamma)`` for moving ``d^alpha`` past ``z^b``."""
    ranges = [range(min(x, y) + 1) for x, y in zip(alpha, b)]
    out = []
    for gamma in product(*ranges):
        m = 1
        for ai, bi, gi in zip(alpha, b, gamma):
            if gi:
                m *= comb(ai, gi) * _falling(bi, gi)
        out.append((m, gamma))
    return out


def weyl_mul_terms(left, right):
    out = {}
    cache = {}
    for (a, alpha), c1 in left.items():
        for (b, beta), c2 in right.items():
            key = (alpha, b)
            exp = cache.get(key)
            if exp is None:
                exp = cache[key] = leibniz_expansion(alpha, b)
            c = c1 * c2
            for m, gamma in exp:
                z = tuple(ai + bi - gi for ai, bi, gi in zip(a, b, gamma))
                d = tuple(xi + yi - gi for xi, yi, gi in zip(alpha, beta, gamma))
                k = (z, d)
                v = c * m if m != 1 else c
                prev = out.get(k)
                out[k] = v if prev is None else prev + v
    return {k: v for k, v in out.items() if v}
