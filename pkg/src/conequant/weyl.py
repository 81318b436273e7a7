"""The Weyl algebra D(V) of polynomial differential operators, exactly.

Elements are kept in normal form ``sum_alpha p_alpha(z) d^alpha`` with all
derivatives to the right of the coefficients.  The cone ``C = {Q = 0}`` enters
through two ideal tests:

* ``in_left_ideal(d, Q)``: ``d`` lies in ``I.D(V)``, i.e. every coefficient
  ``p_alpha`` is divisible by ``Q``.
* ``preserves_ideal(d, Q)``: ``d(I) <= I``, i.e. ``d`` restricts to the cone.

Why the second test reduces to the first: ``d(I) <= I`` iff the image of
``d o M_Q`` lies in ``(Q)``.  An operator ``E = sum p_alpha d^alpha`` whose
image lies in ``(Q)`` has every ``p_alpha`` in ``(Q)``: apply ``E`` to the
monomials ``z^beta`` in order of increasing ``|beta|``.  ``E(1) = p_0``, and
``E(z^beta) = beta! p_beta + (terms with p_gamma, gamma < beta)``, so by
induction each ``p_beta`` is a combination of images, hence in ``(Q)``
(``beta!`` is invertible).  The converse is clear.  So ``d(I) <= I`` iff
``d o M_Q`` lies in ``I.D(V)``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, List, Sequence, Tuple

from . import _kernel
from .exact_linalg import det, inverse
from .poly import MultiIndex, Polynomial, grlex_key, unit_index
from .scalar import ONE, QI, as_qi

__all__ = [
    "WeylElement",
    "QuadraticForm",
    "normal_mul",
    "commutator",
    "apply",
    "bigrade",
    "in_left_ideal",
    "preserves_ideal",
    "cone_equal",
    "reduce_mod_ideal",
    "DimensionMismatch",
]

Key = Tuple[MultiIndex, MultiIndex]


class DimensionMismatch(ValueError):
    """Operands live in Weyl algebras of different dimension."""


def _check_dims(a, b):
    if a.n != b.n:
        raise DimensionMismatch(f"dimension mismatch: {a.n} vs {b.n}")


class WeylElement:
    """Normal-ordered element of the n-variable Weyl algebra.

    ``terms`` maps ``(z_exponents, d_exponents)`` to a nonzero QI coefficient.
    Values are treated as immutable.
    """

    __slots__ = ("n", "terms", "_hash")

    def __init__(self, n: int, terms: Dict[Key, object] | None = None):
        self.n = n
        clean: Dict[Key, QI] = {}
        for (a, alpha), c in (terms or {}).items():
            a, alpha = tuple(a), tuple(alpha)
            if len(a) != n or len(alpha) != n:
                raise ValueError(f"multi-index length differs from n={n}")
            if min(a + alpha, default=0) < 0:
                raise ValueError("negative exponent")
            c = as_qi(c)
            if c:
                clean[(a, alpha)] = c
        self.terms = clean
        self._hash = None

    @classmethod
    def _trusted(cls, n: int, terms: Dict[Key, QI]) -> "WeylElement":
        obj = object.__new__(cls)
        obj.n = n
        obj.terms = terms
        obj._hash = None
        return obj

    # -- constructors ------------------------------------------------------
    @classmethod
    def zero(cls, n: int) -> "WeylElement":
        return cls._trusted(n, {})

    @classmethod
    def scalar(cls, n: int, c) -> "WeylElement":
        return cls(n, {((0,) * n, (0,) * n): c})

    @classmethod
    def one(cls, n: int) -> "WeylElement":
        return cls.scalar(n, 1)

    @classmethod
    def z(cls, n: int, i: int) -> "WeylElement":
        """Multiplication by the coordinate z_{i+1}."""
        return cls._trusted(n, {(unit_index(n, i), (0,) * n): ONE})

    @classmethod
    def d(cls, n: int, i: int) -> "WeylElement":
        """The partial derivative d/dz_{i+1}."""
        return cls._trusted(n, {((0,) * n, unit_index(n, i)): ONE})

    @classmethod
    def from_polynomial(cls, p: Polynomial) -> "WeylElement":
        zero = (0,) * p.n
        return cls._trusted(p.n, {(e, zero): c for e, c in p.terms.items()})

    @classmethod
    def from_coefficients(cls, n: int, coeffs: Dict[MultiIndex, Polynomial]) -> "WeylElement":
        terms = {}
        for alpha, p in coeffs.items():
            for e, c in p.terms.items():
                terms[(e, tuple(alpha))] = c
        return cls(n, terms)

    @classmethod
    def linear_form(cls, coeffs: Sequence) -> "WeylElement":
        """Multiplication by ``sum c_i z_i``."""
        return cls.from_polynomial(Polynomial.linear(coeffs))

    @classmethod
    def directional(cls, v: Sequence) -> "WeylElement":
        """Directional derivative ``sum v_i d_i``."""
        n = len(v)
        return cls(n, {((0,) * n, unit_index(n, i)): c for i, c in enumerate(v)})

    # -- structure -----------------------------------------------------------
    def coefficients(self) -> Dict[MultiIndex, Polynomial]:
        """The normal form as ``{alpha: p_alpha}``."""
        out: Dict[MultiIndex, Dict[MultiIndex, QI]] = {}
        for (a, alpha), c in self.terms.items():
            out.setdefault(alpha, {})[a] = c
        return {alpha: Polynomial._trusted(self.n, t) for alpha, t in out.items()}

    def order(self) -> int:
        """Operator order max |alpha|; -1 for zero."""
        return max((sum(alpha) for _, alpha in self.terms), default=-1)

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.n == other.n and self.terms == other.terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.n, frozenset(self.terms.items())))
        return self._hash

    def __repr__(self):
        from .dsl import format_expr

        return f"WeylElement({format_expr(self)!r})"

    # -- vector space ------------------------------------------------------
    def __add__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(self.n, other)
        _check_dims(self, other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            v = out.get(k)
            v = c if v is None else v + c
            if v:
                out[k] = v
            else:
                out.pop(k, None)
        return WeylElement._trusted(self.n, out)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement._trusted(self.n, {k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if not isinstance(other, WeylElement):
            other = WeylElement.scalar(self.n, other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "WeylElement":
        c = as_qi(c)
        if not c:
            return WeylElement.zero(self.n)
        return WeylElement._trusted(self.n, {k: v * c for k, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return normal_mul(self, other)
        if isinstance(other, Polynomial):
            return normal_mul(self, WeylElement.from_polynomial(other))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Polynomial):
            return normal_mul(WeylElement.from_polynomial(other), self)
        return self.scale(other)

    def __pow__(self, k: int):
        out = WeylElement.one(self.n)
        for _ in range(k):
            out = out * self
        return out

    def conjugate(self) -> "WeylElement":
        """Complex-conjugate every coefficient."""
        return WeylElement._trusted(self.n, {k: c.conjugate() for k, c in self.terms.items()})

    def is_real(self) -> bool:
        return all(c.is_real() for c in self.terms.values())

    def transform(self, g) -> "WeylElement":
        """Push the operator forward along the linear map ``g`` (a rational matrix).

        With ``(g.f)(z) = f(g^{-1} z)`` the induced algebra automorphism sends
        ``z_i -> sum_j (g^{-1})_{ij} z_j`` and ``d_i -> sum_j g_{ji} d_j``.
        """
        n = self.n
        ginv = inverse([[Fraction(x) if not isinstance(x, QI) else x for x in row] for row in g])
        z_img = [Polynomial.linear(ginv[i]) for i in range(n)]
        d_img = [Polynomial.linear([g[j][i] for j in range(n)]) for i in range(n)]
        out: Dict[Key, QI] = {}
        for alpha, p in self.coefficients().items():
            zp = p.substitute_linear(z_img)
            dp = Polynomial.constant(n, 1)
            for i, k in enumerate(alpha):
                if k:
                    dp = dp * d_img[i] ** k
            for a, c1 in zp.terms.items():
                for b, c2 in dp.terms.items():
                    key = (a, b)
                    out[key] = out.get(key, 0) + c1 * c2
        return WeylElement(n, out)


def normal_mul(a: WeylElement, b: WeylElement) -> WeylElement:
    """Product ``a b`` in normal form (exact, via the Leibniz rule)."""
    _check_dims(a, b)
    return WeylElement._trusted(a.n, _kernel.weyl_mul_terms(a.terms, b.terms))


def commutator(a: WeylElement, b: WeylElement) -> WeylElement:
    return normal_mul(a, b) - normal_mul(b, a)


def apply(d: WeylElement, f: Polynomial) -> Polynomial:
    """The polynomial ``d(f)``."""
    if d.n != f.n:
        raise DimensionMismatch(f"dimension mismatch: {d.n} vs {f.n}")
    out = Polynomial.zero(d.n)
    for alpha, p in d.coefficients().items():
        df = f.diff_multi(alpha)
        if df:
            out = out + p * df
    return out


def bigrade(d: WeylElement) -> List[Tuple[Tuple[int, int], WeylElement]]:
    """Split ``d`` into pieces of bidegree ``(k, l)``.

    ``k = |alpha|`` is the order and ``l = deg(p) - |alpha|`` the weight under
    rescaling.  Pieces are returned sorted by ``(k, l)``.
    """
    pieces: Dict[Tuple[int, int], Dict[Key, QI]] = {}
    for (a, alpha), c in d.terms.items():
        k = sum(alpha)
        pieces.setdefault((k, sum(a) - k), {})[(a, alpha)] = c
    return [(kl, WeylElement._trusted(d.n, t)) for kl, t in sorted(pieces.items())]


class QuadraticForm:
    """Nondegenerate quadratic form ``Q(z) = sum B_ij z_i z_j`` with rational B."""

    def __init__(self, matrix):
        b = [[Fraction(x) for x in row] for row in matrix]
        n = len(b)
        if any(len(row) != n for row in b):
            raise ValueError("form matrix must be square")
        if n <= 2:
            raise ValueError(f"need n > 2, got n={n}")
        for i in range(n):
            for j in range(i + 1, n):
                if b[i][j] != b[j][i]:
                    raise ValueError("form matrix must be symmetric")
        if det(b) == 0:
            raise ValueError("degenerate quadratic form")
        self.n = n
        self.matrix = b
        self.inverse_matrix = inverse(b)

    @classmethod
    def standard(cls, n: int) -> "QuadraticForm":
        """diag(1, ..., 1, -1)."""
        return cls([[(1 if i < n - 1 else -1) if i == j else 0 for j in range(n)] for i in range(n)])

    def __eq__(self, other):
        return isinstance(other, QuadraticForm) and self.matrix == other.matrix

    def __hash__(self):
        return hash(tuple(map(tuple, self.matrix)))

    def __repr__(self):
        return f"QuadraticForm({[[str(x) for x in r] for r in self.matrix]})"

    def bilinear(self, u, v) -> Fraction:
        return sum(
            Fraction(u[i]) * self.matrix[i][j] * Fraction(v[j])
            for i in range(self.n)
            for j in range(self.n)
        )

    def value(self, u) -> Fraction:
        return self.bilinear(u, u)

    def polynomial(self) -> Polynomial:
        n = self.n
        terms: Dict[MultiIndex, Fraction] = {}
        for i in range(n):
            for j in range(n):
                if self.matrix[i][j]:
                    e = tuple(int(k == i) + int(k == j) for k in range(n))
                    terms[e] = terms.get(e, 0) + self.matrix[i][j]
        return Polynomial(n, terms)

    def multiplication_operator(self) -> WeylElement:
        return WeylElement.from_polynomial(self.polynomial())

    def tau(self, v) -> List[Fraction]:
        """Coefficients of the covector ``B(v, .)``."""
        return [sum(Fraction(v[i]) * self.matrix[i][j] for i in range(self.n)) for j in range(self.n)]

    def tau_inverse(self, phi) -> List:
        """The vector ``v`` with ``B(v, .) = phi``."""
        return [
            sum(self.inverse_matrix[i][j] * phi[j] for j in range(self.n)) for i in range(self.n)
        ]

    def dual_value(self, phi) -> QI:
        """``q*(phi) = Q(tau^{-1} phi)``."""
        v = self.tau_inverse(phi)
        return as_qi(
            sum(v[i] * self.matrix[i][j] * v[j] for i in range(self.n) for j in range(self.n))
        )

    def box(self) -> WeylElement:
        """Second-order operator ``sum (B^{-1})_ij d_i d_j``."""
        n = self.n
        terms: Dict[Key, Fraction] = {}
        zero = (0,) * n
        for i in range(n):
            for j in range(n):
                c = self.inverse_matrix[i][j]
                if c:
                    e = tuple(int(k == i) + int(k == j) for k in range(n))
                    terms[(zero, e)] = terms.get((zero, e), 0) + c
        return WeylElement(n, terms)


def _as_poly(Q) -> Polynomial:
    return Q.polynomial() if isinstance(Q, QuadraticForm) else Q


def reduce_mod_ideal(d: WeylElement, Q, order=grlex_key) -> WeylElement:
    """Canonical representative of ``d`` modulo ``I.D(V)``.

    Every coefficient ``p_alpha`` is replaced by its remainder on division by Q.
    """
    q = _as_poly(Q)
    coeffs = {}
    for alpha, p in d.coefficients().items():
        r = p.remainder(q, order)
        if r:
            coeffs[alpha] = r
    return WeylElement.from_coefficients(d.n, coeffs)


def in_left_ideal(d: WeylElement, Q, order=grlex_key) -> bool:
    """True iff ``d`` lies in the left ideal ``I.D(V)`` generated by Q."""
    q = _as_poly(Q)
    return all(p.divisible_by(q, order) for p in d.coefficients().values())


def preserves_ideal(d: WeylElement, Q) -> bool:
    """True iff ``d(I) <= I``, tested as ``d o M_Q in I.D(V)``."""
    q = _as_poly(Q)
    return in_left_ideal(normal_mul(d, WeylElement.from_polynomial(q)), q)


def cone_equal(a: WeylElement, b: WeylElement, Q) -> bool:
    """Equality of the classes of ``a`` and ``b`` in D(V)_I / I.D(V)."""
    return in_left_ideal(a - b, Q)
