# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled Weyl-algebra product kernel (same contract as ``_pykernel``)."""

from libc.stdlib cimport malloc, free


cdef object _py_factor(int alpha, int b, int g):
    from math import comb, perm
    return comb(alpha, g) * perm(b, g)


cdef object _multiplier(int* alpha, int* b, int* g, int n):
    cdef long long m = 1
    cdef int i, j
    cdef long long f
    cdef object big = None
    for i in range(n):
        if g[i] == 0:
            continue
        if alpha[i] > 20 or b[i] > 20:
            # exact fallback for exponents where the C product could overflow
            if big is None:
                big = m
            big = big * _py_factor(alpha[i], b[i], g[i])
            continue
        f = 1
        # C(alpha, g) * b!/(b-g)!
        for j in range(g[i]):
            f = f * (alpha[i] - j) // (j + 1)
        for j in range(g[i]):
            f *= b[i] - j
        if big is None and m < (1LL << 30) and f < (1LL << 30):
            m *= f
        else:
            if big is None:
                big = m
            big = big * f
    return m if big is None else big


def weyl_mul_terms(dict left, dict right):
    cdef dict out = {}
    cdef int n, i, k
    cdef int *a
    cdef int *alpha
    cdef int *b
    cdef int *beta
    cdef int *g
    cdef int *lim
    cdef bint done
    if not left or not right:
        return out
    n = len(next(iter(left))[0])
    a = <int*> malloc(6 * n * sizeof(int))
    if a == NULL:
        raise MemoryError()
    alpha = a + n
    b = a + 2 * n
    beta = a + 3 * n
    g = a + 4 * n
    lim = a + 5 * n
    try:
        for (ta, talpha), c1 in left.items():
            for i in range(n):
                a[i] = ta[i]
                alpha[i] = talpha[i]
            for (tb, tbeta), c2 in right.items():
                for i in range(n):
                    b[i] = tb[i]
                    beta[i] = tbeta[i]
                    lim[i] = alpha[i] if alpha[i] < b[i] else b[i]
                    g[i] = 0
                c = c1 * c2
                done = False
                while not done:
                    m = _multiplier(alpha, b, g, n)
                    z = tuple([a[i] + b[i] - g[i] for i in range(n)])
                    d = tuple([alpha[i] + beta[i] - g[i] for i in range(n)])
                    key = (z, d)
                    v = c * m if m != 1 else c
                    prev = out.get(key)
                    out[key] = v if prev is None else prev + v
                    # odometer over gamma <= lim
                    k = 0
                    while k < n:
                        if g[k] < lim[k]:
                            g[k] += 1
                            break
                        g[k] = 0
                        k += 1
                    if k == n:
                        done = True
    finally:
        free(a)
    return {key: v for key, v in out.items() if v}
