"""Sparse multivariate polynomials over Q(i).

A polynomial in ``n`` variables is a mapping from exponent tuples (length
``n``) to nonzero :class:`~conequant.scalar.QI` coefficients.  Division is
only supported by a single polynomial, which is all the cone ideal needs.
"""

from __future__ import annotations

from typing import Callable, Dict, Iterable, Tuple

from .scalar import QI, ONE, as_qi

MultiIndex = Tuple[int, ...]

__all__ = [
    "MultiIndex",
    "Polynomial",
    "grlex_key",
    "grevlex_key",
    "revlex_vars_key",
    "add_index",
    "sub_index",
    "unit_index",
]


def unit_index(n: int, i: int, k: int = 1) -> MultiIndex:
    e = [0] * n
    e[i] = k
    return tuple(e)


def add_index(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x + y for x, y in zip(a, b))


def sub_index(a: MultiIndex, b: MultiIndex) -> MultiIndex:
    return tuple(x - y for x, y in zip(a, b))


def _divides(small: MultiIndex, big: MultiIndex) -> bool:
    return all(s <= b for s, b in zip(small, big))


# Monomial orders, as sort keys (bigger key = bigger monomial).
def grlex_key(e: MultiIndex):
    """Graded lex with z1 > z2 > ... > zn."""
    return (sum(e), e)


def grevlex_key(e: MultiIndex):
    """Graded reverse lex."""
    return (sum(e), tuple(-x for x in reversed(e)))


def revlex_vars_key(e: MultiIndex):
    """Plain lex with the variable order reversed (zn > ... > z1)."""
    return tuple(reversed(e))


class Polynomial:
    """Immutable sparse polynomial ``sum c_a z^a`` in ``n`` variables."""

    __slots__ = ("n", "terms")

    def __init__(self, n: int, terms: Dict[MultiIndex, QI] | None = None):
        self.n = n
        clean = {}
        if terms:
            for e, c in terms.items():
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not have length {n}")
                if any(x < 0 for x in e):
                    raise ValueError(f"negative exponent in {e}")
                c = as_qi(c)
                if c:
                    clean[e] = c
        self.terms = clean

    @classmethod
    def _trusted(cls, n: int, terms: Dict[MultiIndex, QI]) -> "Polynomial":
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "Polynomial":
        return cls._trusted(n, {})

    @classmethod
    def constant(cls, n: int, c) -> "Polynomial":
        return cls(n, {(0,) * n: c})

    @classmethod
    def var(cls, n: int, i: int) -> "Polynomial":
        """The coordinate function z_{i+1} (0-based index ``i``)."""
        return cls._trusted(n, {unit_index(n, i): ONE})

    @classmethod
    def linear(cls, coeffs: Iterable) -> "Polynomial":
        coeffs = list(coeffs)
        n = len(coeffs)
        return cls(n, {unit_index(n, i): c for i, c in enumerate(coeffs)})

    # -- basic protocol ------------------------------------------------------
    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.n == other.n and self.terms == other.terms
        try:
            c = as_qi(other)
        except TypeError:
            return NotImplemented
        return self == Polynomial.constant(self.n, c)

    def __hash__(self):
        return hash((self.n, frozenset(self.terms.items())))

    def __repr__(self):
        return f"Polynomial({self.n}, {self.terms!r})"

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def is_homogeneous(self) -> bool:
        return len({sum(e) for e in self.terms}) <= 1

    def _check(self, other: "Polynomial"):
        if self.n != other.n:
            raise ValueError(f"dimension mismatch: {self.n} vs {other.n}")

    # -- ring operations -----------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            v = c if v is None else v + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
        return Polynomial._trusted(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._trusted(self.n, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, Polynomial):
            other = Polynomial.constant(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "Polynomial":
        c = as_qi(c)
        if not c:
            return Polynomial.zero(self.n)
        return Polynomial._trusted(self.n, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if not isinstance(other, Polynomial):
            return self.scale(other)
        self._check(other)
        out: Dict[MultiIndex, QI] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add_index(e1, e2)
                v = out.get(e)
                p = c1 * c2
                out[e] = p if v is None else v + p
        return Polynomial._trusted(self.n, {e: c for e, c in out.items() if c})

    def __rmul__(self, other):
        return self.scale(other)

    def __pow__(self, k: int):
        out = Polynomial.constant(self.n, 1)
        for _ in range(k):
            out = out * self
        return out

    def mul_monomial(self, e: MultiIndex, c=ONE) -> "Polynomial":
        c = as_qi(c)
        return Polynomial._trusted(
            self.n, {add_index(a, e): v * c for a, v in self.terms.items()}
        )

    def diff(self, i: int, k: int = 1) -> "Polynomial":
        """k-th partial derivative in variable ``i`` (0-based)."""
        out = {}
        for e, c in self.terms.items():
            if e[i] < k:
                continue
            f = 1
            for j in range(k):
                f *= e[i] - j
            ne = list(e)
            ne[i] -= k
            out[tuple(ne)] = c * f
        return Polynomial._trusted(self.n, out)

    def diff_multi(self, alpha: MultiIndex) -> "Polynomial":
        out = self
        for i, k in enumerate(alpha):
            if k:
                out = out.diff(i, k)
        return out

    def substitute_linear(self, images) -> "Polynomial":
        """Replace each z_i by the polynomial ``images[i]``."""
        out = Polynomial.zero(self.n)
        for e, c in self.terms.items():
            term = Polynomial.constant(self.n, c)
            for i, k in enumerate(e):
                if k:
                    term = term * images[i] ** k
            out = out + term
        return out

    def evaluate(self, point) -> complex:
        """Floating-point evaluation at a numeric point."""
        total = 0j
        for e, c in self.terms.items():
            v = complex(c)
            for x, k in zip(point, e):
                if k:
                    v *= x**k
            total += v
        return total

    def conjugate(self) -> "Polynomial":
        return Polynomial._trusted(self.n, {e: c.conjugate() for e, c in self.terms.items()})

    # -- division by one polynomial ------------------------------------------
    def leading(self, order: Callable = grlex_key) -> Tuple[MultiIndex, QI]:
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        e = max(self.terms, key=order)
        return e, self.terms[e]

    def divmod(self, divisor: "Polynomial", order: Callable = grlex_key):
        """Multivariate division by a single polynomial.

        Returns ``(quotient, remainder)`` with ``self = quotient*divisor +
        remainder`` and no term of the remainder divisible by the leading
        monomial of ``divisor``.  For a single divisor the remainder is
        unique, so divisibility does not depend on ``order``.
        """
        self._check(divisor)
        lm, lc = divisor.leading(order)
        inv_lc = lc.inverse()
        rem = dict(self.terms)
        quot: Dict[MultiIndex, QI] = {}
        while True:
            cands = [e for e in rem if _divides(lm, e)]
            if not cands:
                break
            e = max(cands, key=order)
            c = rem[e] * inv_lc
            shift = sub_index(e, lm)
            quot[shift] = quot.get(shift, 0) + c
            for de, dc in divisor.terms.items():
                te = add_index(de, shift)
                v = rem.get(te, 0) - c * dc
                if v:
                    rem[te] = v
                else:
                    rem.pop(te, None)
        return (
            Polynomial._trusted(self.n, {e: c for e, c in quot.items() if c}),
            Polynomial._trusted(self.n, rem),
        )

    def remainder(self, divisor: "Polynomial", order: Callable = grlex_key) -> "Polynomial":
        return self.divmod(divisor, order)[1]

    def divisible_by(self, divisor: "Polynomial", order: Callable = grlex_key) -> bool:
        return not self.remainder(divisor, order).terms
