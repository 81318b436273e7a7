"""Dense exact linear algebra over Q or Q(i).

Matrices are lists of rows.  Entries may be ``Fraction`` or ``QI``; any type
with exact field operations and truthiness for zero works.
"""

from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

__all__ = [
    "rref",
    "rank",
    "nullspace",
    "solve",
    "det",
    "inverse",
    "matmul",
    "transpose",
    "identity",
    "congruence_diagonalize",
    "signature",
]


def identity(n: int, one=Fraction(1), zero=Fraction(0)):
    return [[one if i == j else zero for j in range(n)] for i in range(n)]


def transpose(m):
    return [list(r) for r in zip(*m)]


def matmul(a, b):
    bt = transpose(b)
    out = []
    for row in a:
        out_row = []
        for col in bt:
            s = 0
            for x, y in zip(row, col):
                if x and y:
                    s = s + x * y
            out_row.append(s)
        out.append(out_row)
    return out


def rref(m: Sequence[Sequence]) -> Tuple[List[List], List[int]]:
    """Reduced row echelon form and pivot columns."""
    a = [list(r) for r in m]
    if not a:
        return a, []
    rows, cols = len(a), len(a[0])
    pivots: List[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        p = next((i for i in range(r, rows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        inv = 1 / a[r][c]
        a[r] = [x * inv if x else x for x in a[r]]
        for i in range(rows):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [x - f * y if y else x for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    return len(rref(m)[1])


def nullspace(m, zero=Fraction(0), one=Fraction(1)) -> List[List]:
    """Basis of ``{x : m x = 0}`` (column vectors returned as lists)."""
    if not m:
        return []
    cols = len(m[0])
    red, piv = rref(m)
    free = [c for c in range(cols) if c not in piv]
    basis = []
    for f in free:
        v = [zero] * cols
        v[f] = one
        for i, p in enumerate(piv):
            v[p] = -red[i][f]
        basis.append(v)
    return basis


def solve(m, rhs):
    """One solution of ``m x = rhs`` or ``None`` if inconsistent."""
    cols = len(m[0])
    aug = [list(r) + [b] for r, b in zip(m, rhs)]
    red, piv = rref(aug)
    if cols in piv:
        return None
    zero = rhs[0] - rhs[0] if rhs else Fraction(0)
    x = [zero] * cols
    for i, p in enumerate(piv):
        x[p] = red[i][cols]
    return x


def det(m):
    a = [list(r) for r in m]
    n = len(a)
    d = 1
    for c in range(n):
        p = next((i for i in range(c, n) if a[i][c]), None)
        if p is None:
            return 0 * a[0][0]
        if p != c:
            a[c], a[p] = a[p], a[c]
            d = -d
        d = d * a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c]:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return d


def inverse(m):
    n = len(m)
    one = m[0][0] ** 0 if not isinstance(m[0][0], int) else Fraction(1)
    zero = one - one
    aug = [list(r) + [one if i == j else zero for j in range(n)] for i, r in enumerate(m)]
    red, piv = rref(aug)
    if piv[:n] != list(range(n)):
        raise ZeroDivisionError("singular matrix")
    return [row[n:] for row in red]


def congruence_diagonalize(m) -> List:
    """Diagonal entries of a symmetric matrix after a congruence P^T m P.

    Symmetric Gaussian elimination (Schur complements).  A zero pivot is
    repaired by a symmetric swap, or by adding e_j to e_k when only an
    off-diagonal entry survives.  By Sylvester's law of inertia the signs of
    the returned entries give the signature.
    """
    a = [list(r) for r in m]
    n = len(a)
    diag = []
    for k in range(n):
        if not a[k][k]:
            j = next((j for j in range(k + 1, n) if a[j][j]), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j]), None)
                if j is not None:
                    for c in range(n):
                        a[k][c] = a[k][c] + a[j][c]
                    for r in range(n):
                        a[r][k] = a[r][k] + a[r][j]
        p = a[k][k]
        diag.append(p)
        if not p:
            continue
        for i in range(k + 1, n):
            if not a[i][k]:
                continue
            f = a[i][k] / p
            for j in range(k + 1, n):
                if a[k][j]:
                    a[i][j] = a[i][j] - f * a[k][j]
        for i in range(k + 1, n):
            a[i][k] = a[k][i] = p - p
    return diag


def signature(m) -> Tuple[int, int, int]:
    """``(positive, negative, zero)`` counts of a real symmetric matrix."""
    d = [x.re if hasattr(x, "re") and not x.im else x for x in congruence_diagonalize(m)]
    pos = sum(1 for x in d if x > 0)
    neg = sum(1 for x in d if x < 0)
    return pos, neg, len(d) - pos - neg
