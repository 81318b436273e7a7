from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, strategies as st

from conequant.cone import PLQS, euler_h, sl2_triple
from conequant.poly import Polynomial
from conequant.radial import (
    KAPPA,
    LAMBDA,
    T,
    IsotypicParams,
    Laurent,
    LaurentRangeError,
    RadialOperator,
    apply_to_power,
    casimir_scalar,
    commutator,
    compose,
    format_radial,
    isotypic_restrict,
    lower_cone_transform,
    physics_identity,
    physics_operator,
    power_solution_check,
    radial_generators,
    schrodinger_radial,
)
from conequant.scalar import I, QI
from conequant.weyl import QuadraticForm, WeylElement, apply

from strategies import qis

laurents = st.dictionaries(
    st.tuples(st.integers(-1, 3), st.integers(0, 1), st.integers(0, 1)), qis, max_size=4
).map(Laurent)


@given(laurents, laurents, laurents)
def test_laurent_ring(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c


@given(laurents, laurents)
def test_laurent_leibniz(a, b):
    assert (a * b).dt() == a.dt() * b + a * b.dt()


@given(laurents)
def test_t_sign_involution(a):
    assert a.substitute(t_sign=-1).substitute(t_sign=-1) == a


def test_format_radial():
    g = radial_generators(2)
    assert format_radial(g["h"]) == "(2*t)*d + 2"
    assert format_radial(g["f"]) == "(i*t)*d^2 + (2*i)*d - 6*i*t^-1"


@pytest.mark.parametrize("ell", range(11))
def test_sl2_relations(ell):
    g = radial_generators(ell)
    assert commutator(g["e"], g["f"]) == g["h"]
    assert commutator(g["h"], g["e"]) == g["e"].scale(2)
    assert commutator(g["h"], g["f"]) == g["f"].scale(-2)


@pytest.mark.parametrize("ell", range(11))
def test_casimir(ell):
    assert casimir_scalar(ell).constant() == 2 * ell * (ell + 1)


@pytest.mark.parametrize("ell", range(11))
def test_physics_identity(ell):
    assert physics_identity(ell=ell)


def test_physics_identity_rejects_perturbation():
    bad = schrodinger_radial(1) + RadialOperator.mult(Laurent.monomial(t=0, c=Fraction(1, 1000)))
    assert not physics_identity(ell=1, op=bad)


def test_physics_identity_numeric_parameters():
    assert physics_identity(kappa=3, lam=Fraction(-9, 4), ell=2)


def test_compose_range():
    inv = RadialOperator.mult(Laurent.monomial(t=-1))
    with pytest.raises(LaurentRangeError):
        compose(inv, inv)
    assert compose(inv, inv, check=False).coeffs[0] == Laurent.monomial(t=-2)


@pytest.mark.parametrize("ell", range(4))
def test_lower_cone_flips_kappa(ell):
    for k in (1, Fraction(5, 2)):
        for lm in (Fraction(-1, 4), 0, 3):
            op = schrodinger_radial(ell, kappa=k, lam=lm)
            assert lower_cone_transform(op) == schrodinger_radial(ell, kappa=-k, lam=lm)
    s = schrodinger_radial(ell)
    assert lower_cone_transform(lower_cone_transform(s)) == s


def test_power_solution():
    assert power_solution_check(Fraction(1, 2))
    assert power_solution_check(3)
    assert not power_solution_check(3, mu=-1)
    with pytest.raises(ValueError):
        power_solution_check(-1)


# -- independent oracle: the Weyl operators acting on the cone ----------------

def _harmonic(ell):
    # (z1 + i z2)^ell is harmonic in (z1, z2, z3)
    return Polynomial(4, {(1, 0, 0, 0): 1, (0, 1, 0, 0): I}) ** ell


def _on_cone(op, ell, m, sign):
    """Polynomial in z4 equal to ``[op(t^(l+m)) t^-l]`` at ``t = sign * z4``."""
    lp = apply_to_power(op, ell + m)
    terms = {}
    for (a, kap, lam), c in lp.terms.items():
        assert not kap and not lam
        e = a + m
        assert e >= 0
        terms[(0, 0, 0, e)] = terms.get((0, 0, 0, e), 0) + c * (sign ** e)
    return Polynomial(4, terms)


def _weyl_side(d, ell, m, sign):
    z4 = Polynomial.var(4, 3)
    return apply(d, (z4.scale(sign)) ** m * _harmonic(ell))


@pytest.mark.parametrize("cone", ["+", "-"])
@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_generators_act_as_radial_model(cone, ell):
    plqs = PLQS.standard(4)
    t = sl2_triple(plqs)
    q = plqs.form.polynomial()
    sign = 1 if cone == "+" else -1
    elems = {"e": t.e, "h": t.h, "f": t.f, "1": WeylElement.one(4)}
    for name, d in elems.items():
        rad = isotypic_restrict({name: 1}, IsotypicParams(ell, cone=cone))
        for m in range(4):
            lhs = _weyl_side(d, ell, m, sign)
            rhs = _on_cone(rad, ell, m, sign) * _harmonic(ell)
            assert (lhs - rhs).divisible_by(q), (name, m)


@given(qis, qis, qis, qis, st.integers(0, 3), st.integers(0, 3))
def test_restriction_of_weyl_element(a, b, c, k, ell, m):
    plqs = PLQS.standard(4)
    t = sl2_triple(plqs)
    d = t.e.scale(a) + t.h.scale(b) + t.f.scale(c) + WeylElement.scalar(4, k)
    rad = isotypic_restrict(d, IsotypicParams(ell), plqs)
    lhs = _weyl_side(d, ell, m, 1)
    rhs = _on_cone(rad, ell, m, 1) * _harmonic(ell)
    assert (lhs - rhs).divisible_by(plqs.form.polynomial())


def test_restrict_rejects_outside_span():
    with pytest.raises(ValueError):
        isotypic_restrict(WeylElement.z(4, 0), IsotypicParams(0))
    with pytest.raises(ValueError):
        isotypic_restrict({"g": 1}, IsotypicParams(0))
    with pytest.raises(ValueError):
        IsotypicParams(-1)


# -- symbolic check of the closed-form eigenfunctions -------------------------

def _laurent_to_sympy(c, t, kappa, lam):
    out = 0
    for (a, kp, lp), v in c.terms.items():
        coeff = sp.Rational(v.re.numerator, v.re.denominator) + sp.I * sp.Rational(v.im.numerator, v.im.denominator)
        out += coeff * t ** a * kappa ** kp * lam ** lp
    return out


@pytest.mark.parametrize("n, ell", [(1, 0), (2, 0), (2, 1), (3, 1), (3, 2), (4, 0)])
def test_hydrogen_eigenfunction_symbolic(n, ell):
    t, kappa = sp.symbols("t kappa", positive=True)
    lam = -kappa ** 2 / (4 * n ** 2)
    psi = t ** ell * sp.exp(-kappa * t / (2 * n)) * sp.assoc_laguerre(n - ell - 1, 2 * ell + 1, kappa * t / n)
    op = schrodinger_radial(ell)
    lam_sym = sp.Symbol("lam")
    expr = sum(_laurent_to_sympy(c, t, kappa, lam_sym) * sp.diff(psi, t, j) for j, c in op.coeffs.items())
    assert sp.simplify(expr.subs(lam_sym, lam) * sp.exp(kappa * t / (2 * n))) == 0
    # same function against the textbook radial equation r (psi'' + 2/r psi' - l(l+1)/r^2 psi + kappa/r psi + lam psi)
    phys = t * (sp.diff(psi, t, 2) + 2 / t * sp.diff(psi, t) - ell * (ell + 1) / t ** 2 * psi + kappa / t * psi + lam * psi)
    assert sp.simplify(phys * sp.exp(kappa * t / (2 * n))) == 0


def test_wrong_level_is_not_annihilated():
    t, kappa = sp.symbols("t kappa", positive=True)
    psi = sp.exp(-kappa * t / 2)
    op = schrodinger_radial(0)
    lam = sp.Symbol("lam")
    expr = sum(_laurent_to_sympy(c, t, kappa, lam) * sp.diff(psi, t, j) for j, c in op.coeffs.items())
    assert sp.simplify(expr.subs(lam, -kappa ** 2 / 9) * sp.exp(kappa * t / 2)) != 0
