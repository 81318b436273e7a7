"""Exact Gaussian rationals, the coefficient field Q(i)."""

from __future__ import annotations

from fractions import Fraction
import numbers
import re

__all__ = ["QI", "I", "ONE", "ZERO", "as_qi"]


class QI:
    """An element ``re + im*i`` of Q(i), stored as two :class:`Fraction` parts.

    Instances are immutable and hashable; equality is exact.  Ints, Fractions
    and other QI values mix freely in arithmetic.
    """

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re if type(re) is Fraction else Fraction(re))
        object.__setattr__(self, "im", im if type(im) is Fraction else Fraction(im))

    def __setattr__(self, key, value):
        raise AttributeError("QI is immutable")

    @classmethod
    def _raw(cls, re: Fraction, im: Fraction) -> "QI":
        obj = object.__new__(cls)
        object.__setattr__(obj, "re", re)
        object.__setattr__(obj, "im", im)
        return obj

    # -- arithmetic -------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return QI._raw(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return QI._raw(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return QI._raw(other.re - self.re, other.im - self.im)

    def __mul__(self, other):
        if type(other) is int:
            return QI._raw(self.re * other, self.im * other)
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a, b, c, d = self.re, self.im, other.re, other.im
        if not b and not d:
            return QI._raw(a * c, b)
        return QI._raw(a * c - b * d, a * d + b * c)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.inverse()

    def __neg__(self):
        return QI._raw(-self.re, -self.im)

    def __pos__(self):
        return self

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return self.inverse() ** (-k)
        out, base = ONE, self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def inverse(self) -> "QI":
        norm = self.re * self.re + self.im * self.im
        if not norm:
            raise ZeroDivisionError("inverse of zero in Q(i)")
        return QI._raw(self.re / norm, -self.im / norm)

    def conjugate(self) -> "QI":
        return QI._raw(self.re, -self.im)

    # -- predicates / conversion ------------------------------------------
    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def is_real(self) -> bool:
        return not self.im

    def __eq__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return False
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __complex__(self):
        return complex(float(self.re), float(self.im))

    def __float__(self):
        if self.im:
            raise TypeError(f"{self} is not real")
        return float(self.re)

    def __repr__(self):
        return f"QI({self})"

    def __str__(self):
        re_, im_ = self.re, self.im
        if not im_:
            return str(re_)
        ims = "i" if im_ == 1 else "-i" if im_ == -1 else f"{im_}*i"
        if not re_:
            return ims
        sign = "-" if im_ < 0 else "+"
        mag = "i" if abs(im_) == 1 else f"{abs(im_)}*i"
        return f"({re_} {sign} {mag})"

    @classmethod
    def parse(cls, text: str) -> "QI":
        """Parse ``"3/4"``, ``"-2i"``, ``"1/2 + 3/5*i"`` and similar."""
        s = text.replace(" ", "")
        num = r"\d+(?:/\d+)?"
        m = (re.fullmatch(rf"(?P<re>[+-]?{num})(?:(?P<sign>[+-])(?:(?P<im>{num})\*?)?i)?", s)
             or re.fullmatch(rf"(?P<sign>[+-]?)(?:(?P<im>{num})\*?)?i", s))
        if not m:
            raise ValueError(f"not a Gaussian rational: {text!r}")
        groups = m.groupdict()
        re_part = Fraction(groups["re"]) if groups.get("re") else Fraction(0)
        im_part = Fraction(0)
        if groups.get("sign") is not None:
            im_part = Fraction(groups["im"]) if groups["im"] else Fraction(1)
            if groups["sign"] == "-":
                im_part = -im_part
        return cls(re_part, im_part)


def _coerce(x):
    if type(x) is QI:
        return x
    if isinstance(x, QI):
        return x
    if isinstance(x, (int, Fraction)) or isinstance(x, numbers.Rational):
        return QI._raw(Fraction(x), Fraction(0))
    return NotImplemented


def as_qi(x) -> QI:
    """Convert an int, Fraction, QI or exactly-representable complex to QI."""
    c = _coerce(x)
    if c is not NotImplemented:
        return c
    if isinstance(x, str):
        return QI.parse(x)
    if isinstance(x, complex):
        return QI(Fraction(x.real), Fraction(x.imag))
    if isinstance(x, float):
        return QI(Fraction(x))
    raise TypeError(f"cannot convert {x!r} to QI")


ZERO = QI(0)
ONE = QI(1)
I = QI(0, 1)
