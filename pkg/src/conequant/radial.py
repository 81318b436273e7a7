"""Radial shadows of sl2 elements on a spherical-harmonic component.

An operator ``sum_j c_j(t) d_t^j`` has coefficients that are Laurent
polynomials in t whose coefficients are themselves polynomials in two formal
symbols ``kappa`` and ``lambda`` over Q(i).  Only the exponent -1 is admitted
as a negative power of t (the centrifugal term); composition raises if a
result leaves that class.

On the degree-l component the sl2 generators act by::

    E -> i t,   H -> 2 t d + 2,   F -> i (t d^2 + 2 d - l(l+1)/t),   1 -> 1
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb
from typing import Dict, Iterable, Mapping, Optional, Tuple

from .scalar import I, ONE, QI, ZERO, as_qi

__all__ = [
    "Laurent",
    "RadialOperator",
    "IsotypicParams",
    "LaurentRangeError",
    "KAPPA",
    "LAMBDA",
    "T",
    "radial_generators",
    "isotypic_restrict",
    "schrodinger_radial",
    "physics_operator",
    "physics_identity",
    "casimir_scalar",
    "lower_cone_transform",
    "power_solution_check",
    "apply_to_power",
    "compose",
    "commutator",
    "format_radial",
    "format_laurent",
]

LKey = Tuple[int, int, int]  # (t exponent, kappa exponent, lambda exponent)
MIN_T_EXP = -1


class LaurentRangeError(ArithmeticError):
    """A coefficient acquired a power of t below t^-1."""


class Laurent:
    """Element of Q(i)[kappa, lambda][t, 1/t]; immutable."""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Mapping[LKey, object]] = None):
        clean: Dict[LKey, QI] = {}
        for k, c in (terms or {}).items():
            c = as_qi(c)
            if c:
                clean[tuple(k)] = clean.get(tuple(k), ZERO) + c
        self.terms = {k: v for k, v in clean.items() if v}

    @classmethod
    def const(cls, c) -> "Laurent":
        return cls({(0, 0, 0): c})

    @classmethod
    def monomial(cls, t: int = 0, kappa: int = 0, lam: int = 0, c=1) -> "Laurent":
        return cls({(t, kappa, lam): c})

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if not isinstance(other, Laurent):
            try:
                other = Laurent.const(other)
            except TypeError:
                return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def __add__(self, other):
        other = other if isinstance(other, Laurent) else Laurent.const(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            out[k] = out.get(k, ZERO) + c
        return Laurent(out)

    __radd__ = __add__

    def __neg__(self):
        return Laurent({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        other = other if isinstance(other, Laurent) else Laurent.const(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, Laurent):
            c = as_qi(other)
            return Laurent({k: v * c for k, v in self.terms.items()})
        out: Dict[LKey, QI] = {}
        for (a, b, c), x in self.terms.items():
            for (d, e, f), y in other.terms.items():
                k = (a + d, b + e, c + f)
                out[k] = out.get(k, ZERO) + x * y
        return Laurent(out)

    __rmul__ = __mul__

    def dt(self) -> "Laurent":
        return Laurent({(a - 1, b, c): v * a for (a, b, c), v in self.terms.items() if a})

    def min_t(self) -> Optional[int]:
        return min((k[0] for k in self.terms), default=None)

    def max_t(self) -> Optional[int]:
        return max((k[0] for k in self.terms), default=None)

    def substitute(self, kappa=None, lam=None, t_sign: int = 1) -> "Laurent":
        """Replace kappa / lambda by numbers (Q(i)) and/or t by ``t_sign * t``."""
        out: Dict[LKey, QI] = {}
        for (a, b, c), v in self.terms.items():
            if t_sign == -1 and a % 2:
                v = -v
            if kappa is not None:
                v = v * as_qi(kappa) ** b
                b = 0
            if lam is not None:
                v = v * as_qi(lam) ** c
                c = 0
            k = (a, b, c)
            out[k] = out.get(k, ZERO) + v
        return Laurent(out)

    def is_constant(self) -> bool:
        return all(k == (0, 0, 0) for k in self.terms)

    def constant(self) -> QI:
        return self.terms.get((0, 0, 0), ZERO)

    def __repr__(self):
        return f"Laurent({format_laurent(self)!r})"


def format_laurent(p: Laurent) -> str:
    if not p.terms:
        return "0"
    parts = []
    for (a, b, c), v in sorted(p.terms.items(), key=lambda kv: (-kv[0][0], -kv[0][1], -kv[0][2])):
        sym = []
        if b:
            sym.append("kappa" + (f"^{b}" if b != 1 else ""))
        if c:
            sym.append("lambda" + (f"^{c}" if c != 1 else ""))
        if a:
            sym.append("t" + (f"^{a}" if a != 1 else ""))
        mon = "*".join(sym)
        if not mon:
            parts.append(str(v))
        elif v == 1:
            parts.append(mon)
        elif v == -1:
            parts.append("-" + mon)
        else:
            parts.append(f"{v}*{mon}")
    return " + ".join(parts).replace("+ -", "- ")


T = Laurent.monomial(t=1)
KAPPA = Laurent.monomial(kappa=1)
LAMBDA = Laurent.monomial(lam=1)


class RadialOperator:
    """``sum_j c_j(t) d_t^j`` with Laurent coefficients (coefficients left)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Optional[Mapping[int, object]] = None):
        clean: Dict[int, Laurent] = {}
        for j, c in (coeffs or {}).items():
            c = c if isinstance(c, Laurent) else Laurent.const(c)
            if j < 0:
                raise ValueError("negative derivative order")
            if c:
                clean[j] = c
        self.coeffs = clean

    @classmethod
    def mult(cls, c) -> "RadialOperator":
        return cls({0: c})

    @classmethod
    def d(cls, k: int = 1) -> "RadialOperator":
        return cls({k: 1})

    def order(self) -> int:
        return max(self.coeffs, default=-1)

    def min_t(self) -> Optional[int]:
        vals = [c.min_t() for c in self.coeffs.values()]
        return min(vals, default=None)

    def __eq__(self, other):
        if isinstance(other, RadialOperator):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __add__(self, other):
        if not isinstance(other, RadialOperator):
            other = RadialOperator.mult(other)
        out = dict(self.coeffs)
        for j, c in other.coeffs.items():
            out[j] = out[j] + c if j in out else c
        return RadialOperator(out)

    __radd__ = __add__

    def __neg__(self):
        return RadialOperator({j: -c for j, c in self.coeffs.items()})

    def __sub__(self, other):
        if not isinstance(other, RadialOperator):
            other = RadialOperator.mult(other)
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "RadialOperator":
        return RadialOperator({j: v * c for j, v in self.coeffs.items()})

    def __mul__(self, other):
        if not isinstance(other, RadialOperator):
            return self.scale(other)
        return compose(self, other)

    def __rmul__(self, other):
        return self.scale(other)

    def substitute(self, kappa=None, lam=None) -> "RadialOperator":
        return RadialOperator({j: c.substitute(kappa, lam) for j, c in self.coeffs.items()})

    def __repr__(self):
        return f"RadialOperator({format_radial(self)!r})"


def format_radial(op: RadialOperator) -> str:
    if not op.coeffs:
        return "0"
    parts = []
    for j in sorted(op.coeffs, reverse=True):
        c = format_laurent(op.coeffs[j])
        dpart = "" if j == 0 else ("d" if j == 1 else f"d^{j}")
        parts.append(c if not dpart else f"({c})*{dpart}")
    return " + ".join(parts).replace("+ -", "- ")


def compose(a: RadialOperator, b: RadialOperator, check: bool = True) -> RadialOperator:
    """``a o b`` via ``d^j c = sum_m C(j, m) c^(m) d^(j-m)``."""
    out: Dict[int, Laurent] = {}
    for j, cj in a.coeffs.items():
        for k, ck in b.coeffs.items():
            deriv = ck
            for m in range(j + 1):
                if m:
                    deriv = deriv.dt()
                if not deriv:
                    break
                term = cj * deriv * comb(j, m)
                key = j - m + k
                out[key] = out[key] + term if key in out else term
    res = RadialOperator(out)
    if check:
        lo = res.min_t()
        if lo is not None and lo < MIN_T_EXP:
            raise LaurentRangeError(f"composition produced t^{lo}")
    return res


def commutator(a: RadialOperator, b: RadialOperator) -> RadialOperator:
    return compose(a, b) - compose(b, a)


# ---------------------------------------------------------------------------
# the isotypic restriction


@dataclass(frozen=True)
class IsotypicParams:
    ell: int
    cone: str = "+"  # "+" upper, "-" lower
    kappa: object = None  # None keeps kappa symbolic
    lam: object = None  # None keeps lambda symbolic

    def __post_init__(self):
        if self.ell < 0:
            raise ValueError("ell must be >= 0")
        if self.cone not in ("+", "-"):
            raise ValueError("cone sign must be '+' or '-'")


def radial_generators(ell: int) -> Dict[str, RadialOperator]:
    """Images of e, h, f and 1 on the degree-``ell`` component."""
    c = ell * (ell + 1)
    e = RadialOperator.mult(T * I)
    h = RadialOperator({1: T * 2, 0: 2})
    f = RadialOperator({2: T, 1: 2, 0: Laurent.monomial(t=-1, c=-c)}).scale(I)
    return {"e": e, "h": h, "f": f, "1": RadialOperator.mult(1)}


def _substitute_t_sign(op: RadialOperator) -> RadialOperator:
    """Rewrite in s = -t: ``c_j(t) d_t^j -> c_j(-s) (-1)^j d_s^j``."""
    out = {}
    for j, c in op.coeffs.items():
        v = c.substitute(t_sign=-1)
        out[j] = -v if j % 2 else v
    return RadialOperator(out)


def isotypic_restrict(x, params: IsotypicParams, plqs=None) -> RadialOperator:
    """Radial operator of ``x`` in span{e, h, f, 1}.

    ``x`` is a mapping ``{"e": a, "h": b, "f": c, "1": d}`` or a WeylElement,
    which is decomposed exactly against the sl2 triple of ``plqs`` (default:
    the standard 4-dimensional space).  On the lower cone the result is
    written in the positive variable ``s = -t``.
    """
    gens = radial_generators(params.ell)
    if isinstance(x, Mapping):
        coeffs = dict(x)
        unknown = set(coeffs) - set(gens)
        if unknown:
            raise ValueError(f"no radial image for {sorted(unknown)}")
    else:
        coeffs = _decompose(x, plqs)
    out = RadialOperator()
    for k, v in coeffs.items():
        if isinstance(v, Laurent):
            out = out + RadialOperator({j: c * v for j, c in gens[k].coeffs.items()})
        elif v:
            out = out + gens[k].scale(v)
    if params.kappa is not None or params.lam is not None:
        out = out.substitute(params.kappa, params.lam)
    if params.cone == "-":
        out = _substitute_t_sign(out)
    return out


def _decompose(x, plqs=None) -> Dict[str, QI]:
    from .cone import LieBasis, PLQS, sl2_triple
    from .exact_linalg import solve, transpose
    from .weyl import WeylElement

    if not isinstance(x, WeylElement):
        raise TypeError(f"cannot restrict {type(x).__name__}")
    plqs = plqs or PLQS.standard(x.n)
    basis = LieBasis(plqs)
    t = sl2_triple(plqs)
    names = ["e", "h", "f", "1"]
    vecs = [basis.coordinates(v) for v in (t.e, t.h, t.f, WeylElement.one(plqs.n))]
    sol = solve(transpose(vecs), basis.coordinates(x))
    if sol is None:
        raise ValueError("element is outside span{e, h, f, 1}")
    return dict(zip(names, sol))


def schrodinger_radial(ell: int, kappa=None, lam=None) -> RadialOperator:
    """Radial image of ``kappa - i (lam e + f)`` (symbolic where None)."""
    k = KAPPA if kappa is None else as_qi(kappa)
    lm = LAMBDA if lam is None else as_qi(lam)
    coeffs = {"1": k, "e": lm * (-I), "f": -I}
    return isotypic_restrict(coeffs, IsotypicParams(ell))


def physics_operator(ell: int, kappa=None, lam=None) -> RadialOperator:
    """``r (Delta_l + kappa / r + lam)`` built from the radial Laplacian."""
    k = KAPPA if kappa is None else Laurent.const(kappa)
    lm = LAMBDA if lam is None else Laurent.const(lam)
    r_inv = Laurent.monomial(t=-1)
    lap = RadialOperator({2: 1, 1: r_inv * 2, 0: Laurent.monomial(t=-2, c=-ell * (ell + 1))})
    inner = lap + RadialOperator.mult(k * r_inv + lm)
    # the inner operator has t^-2; the product with r brings it back in range
    return compose(RadialOperator.mult(T), inner, check=False)


def physics_identity(kappa=None, lam=None, ell: int = 0, op: Optional[RadialOperator] = None) -> bool:
    """Coefficientwise equality of the radial Schroedinger operator with
    ``r (Delta_l + kappa/r + lam)``.  ``op`` overrides the left side."""
    lhs = schrodinger_radial(ell, kappa, lam) if op is None else op
    return lhs == physics_operator(ell, kappa, lam)


def casimir_scalar(ell: int) -> Laurent:
    """``h^2/2 + ef + fe`` on the degree-``ell`` component; must be scalar."""
    g = radial_generators(ell)
    cas = compose(g["h"], g["h"]).scale(Fraction(1, 2)) + compose(g["e"], g["f"]) + compose(g["f"], g["e"])
    if cas.order() > 0 or not all(c.is_constant() for c in cas.coeffs.values()):
        raise ArithmeticError(f"Casimir is not scalar: {format_radial(cas)}")
    return cas.coeffs.get(0, Laurent())


def lower_cone_transform(op: RadialOperator) -> RadialOperator:
    """Change variables t = -s and normalize the overall sign.

    The sign is chosen so that the top-order coefficient keeps the sign of
    its leading power of t; for the Schroedinger operator this maps
    ``S(kappa, lambda)`` to ``S(-kappa, lambda)``.  The map is an involution.
    """
    sub = _substitute_t_sign(op)
    if not sub.coeffs:
        return sub
    j = sub.order()
    top = op.coeffs[j].max_t()
    sign = -1 if (j + top) % 2 else 1
    return sub.scale(sign)


def apply_to_power(op: RadialOperator, mu) -> Laurent:
    """``op(t^mu) / t^mu`` as a Laurent polynomial (mu in Q(i))."""
    mu = as_qi(mu)
    out = Laurent()
    for j, c in op.coeffs.items():
        f = ONE
        for m in range(j):
            f = f * (mu - m)
        out = out + c * Laurent.monomial(t=-j, c=f)
    return out


def power_solution_check(nu, ell: int = 0, mu=None) -> bool:
    """Does ``1 + 2i nu + 2i nu t d`` annihilate ``t^mu``?

    ``mu`` defaults to ``-1 + i/(2 nu)``.  ``ell`` only labels the component;
    the conjugated operator does not depend on it.
    """
    nu = as_qi(nu)
    if not nu.is_real() or nu.re <= 0:
        raise ValueError("nu must be a positive rational")
    if mu is None:
        mu = -1 + I / (nu * 2)
    op = RadialOperator({0: 1 + 2 * I * nu, 1: T * (2 * I * nu)})
    return not apply_to_power(op, mu)
