import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from conequant.cone import (
    PLQS,
    LieBasis,
    NotInSpan,
    cayley,
    check_bracket_table,
    derived_indices,
    dual_pair,
    euler_h,
    jacobi_failures,
    jm_solutions,
    killing_form,
    phi_map,
    psi_map,
    real_form_bases,
    rot,
    schrodinger_element,
    sl2_triple,
    star,
    structure_constants,
    tau_element,
    tensor_of,
    verify_phi_psi,
    verify_so_structure,
)
from conequant.scalar import I, QI
from conequant.verify import filtered_bigrades, run_symbolic_suite
from conequant.weyl import QuadraticForm, WeylElement, commutator, cone_equal, preserves_ideal

from strategies import qis


@pytest.fixture(scope="module")
def sc4():
    return structure_constants(LieBasis(PLQS.standard(4)))


@pytest.fixture(scope="module")
def sc6():
    return structure_constants(LieBasis(PLQS.standard(6)))


def _report(sc):
    return {r["id"]: r for r in verify_so_structure(sc)}


def test_labels_n4(sc4):
    labels = sc4.basis.labels()
    assert len(labels) == 16
    assert labels[:5] == ["tau(e1)", "tau(e2)", "tau(e3)", "tau(e4)", "L(e1,e2)"]
    assert labels[-5:] == ["1", "Psi(tau(e1))", "Psi(tau(e2))", "Psi(tau(e3))", "Psi(tau(e4))"]


def test_so6_structure(sc4):
    rep = _report(sc4)
    assert all(r["status"] == "PASS" for r in rep.values()), rep
    assert rep["dim_s"]["detail"].startswith("dim s = 15")
    assert rep["jacobi"]["detail"] == "Jacobi: 560/560 triples"
    assert "(8+, 7-" in rep["killing_signature"]["detail"]


def test_so8_structure(sc6):
    rep = _report(sc6)
    assert all(r["status"] == "PASS" for r in rep.values()), rep
    assert rep["dim_s"]["detail"].startswith("dim s = 28")


def test_bracket_table_n4_n6(sc4, sc6):
    for sc in (sc4, sc6):
        rows = check_bracket_table(sc.basis)
        assert len(rows) == 8
        assert all(ok for _, ok in rows), rows


def test_all_generators_restrict(sc4):
    q = sc4.basis.q
    assert all(preserves_ideal(b.element, q) for b in sc4.basis.elements)


def test_phi_psi():
    for n in (3, 4, 5, 6):
        assert verify_phi_psi(QuadraticForm.standard(n), samples=4)


def test_phi_psi_general_form():
    form = QuadraticForm([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, Fraction(-1, 3)]])
    assert verify_phi_psi(form, samples=4)


def test_psi_by_hand():
    # standard n = 4, c = e1: Psi = d1 * box - h d1 with box = d1^2 + d2^2 + d3^2 - d4^2
    form = QuadraticForm.standard(4)
    got = psi_map(form, [1, 0, 0, 0])
    from conequant.dsl import parse_operator

    want = parse_operator("z1*(d1^2 + d2^2 + d3^2 - d4^2) - (2*z1*d1 + 2*z2*d2 + 2*z3*d3 + 2*z4*d4 + 2)*d1", 4)
    assert got == want


def test_coordinates_of_bracket_outside_span(sc4):
    with pytest.raises(NotInSpan):
        sc4.basis.coordinates(WeylElement.z(4, 0) * WeylElement.z(4, 1))


@given(st.lists(qis, min_size=16, max_size=16))
@settings(max_examples=15)
def test_coordinates_round_trip(coords):
    basis = LieBasis(PLQS.standard(4))
    assert basis.coordinates(basis.element(coords)) == coords


def test_coordinates_modulo_ideal(sc4):
    basis = sc4.basis
    form = basis.form
    x = basis.elements[5].element
    noisy = x + form.multiplication_operator() * WeylElement.d(4, 2)
    assert basis.coordinates(noisy) == basis.coordinates(x)


def test_jacobi_detects_corruption(sc4):
    table = [[list(c) for c in row] for row in sc4.table]
    i, j = 0, 5
    table[i][j][3] = table[i][j][3] + 1
    table[j][i][3] = table[j][i][3] - 1
    bad = type(sc4)(sc4.basis, table)
    assert jacobi_failures(bad)


def test_killing_form_real_symmetric(sc4):
    kf = killing_form(sc4, derived_indices(sc4.basis))
    assert all(kf[a][b] == kf[b][a] for a in range(15) for b in range(15))


# -- sl2, JM, dual pair -------------------------------------------------------

def test_sl2_triple_n4():
    plqs = PLQS.standard(4)
    t = sl2_triple(plqs)
    assert all(t.relations(plqs.form.polynomial()).values())


def test_jm_unique(sc4):
    plqs = PLQS.standard(4)
    t = sl2_triple(plqs)
    sol, ker = jm_solutions(sc4, t.e, t.h)
    assert sol is not None and ker == []
    assert sc4.basis.element(sol) == t.f


def test_jm_with_normalized_covector(sc4):
    # e_w = w, f_w = Q*(w)^-1 Psi(w) is the same triple up to the factor i
    plqs = PLQS.standard(4)
    w = WeylElement.z(4, 3)
    f_w = psi_map(plqs.form, plqs.w).scale(-1)
    sol, ker = jm_solutions(sc4, w, euler_h(4))
    assert not ker and sc4.basis.element(sol) == f_w


def test_dual_pair_n4(sc4):
    dp = dual_pair(PLQS.standard(4), sc4)
    assert (dp.k_dim, dp.l_dim, dp.l_is_sl2, dp.mutual) == (3, 3, True, True)


def test_dual_pair_n6(sc6):
    dp = dual_pair(PLQS.standard(6), sc6)
    assert (dp.k_dim, dp.l_dim, dp.l_is_sl2, dp.mutual) == (10, 3, True, True)


def test_plqs_validation():
    with pytest.raises(ValueError):
        PLQS([[1, 0, 0], [0, 1, 0], [0, 0, 1]], [0, 0, 1])  # not Lorentzian
    with pytest.raises(ValueError):
        PLQS(QuadraticForm.standard(4).matrix, [0, 0, 0, 2])  # q*(w) = -4
    with pytest.raises(ValueError):
        PLQS(QuadraticForm.standard(4).matrix, [1, 0, 0, 0])  # q*(w) = +1


_HYPERBOLIC = [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]


def test_nonstandard_plqs_suite():
    # B^-1 = B here, so w = (1, -1/2, 0, 0) has q*(w) = -1
    plqs = PLQS(_HYPERBOLIC, [1, Fraction(-1, 2), 0, 0])
    rows = run_symbolic_suite(QuadraticForm(_HYPERBOLIC), w=plqs.w, radial=False)
    failed = [r for r in rows if r["status"] == "FAIL"]
    assert not failed
    assert not [r for r in rows if r["status"] == "SKIP"]


def test_suite_skips_without_w():
    rows = run_symbolic_suite(QuadraticForm([[1, 0, 0], [0, 1, 0], [0, 0, 1]]), radial=False)
    assert [r["id"] for r in rows if r["status"] == "SKIP"] == ["plqs"]
    assert not [r for r in rows if r["status"] == "FAIL"]


# -- star and Cayley ----------------------------------------------------------

@given(st.lists(qis, min_size=16, max_size=16), st.lists(qis, min_size=16, max_size=16))
@settings(max_examples=10)
def test_star_antilinear_antihomomorphism(x, y):
    basis = LieBasis(PLQS.standard(4))
    a, b = basis.element(x), basis.element(y)
    q = basis.q
    assert star(basis, star(basis, a)) == a
    assert star(basis, a.scale(I)) == star(basis, a).scale(-I)
    assert cone_equal(star(basis, commutator(a, b)), commutator(star(basis, b), star(basis, a)), q)


def test_real_forms_and_cayley(sc4):
    basis = sc4.basis
    star_r, plain = real_form_bases(basis)
    assert len(star_r) == len(plain) == 15
    for x in star_r:
        assert star(basis, x) == x.scale(-1)
    images = [cayley(x) for x in star_r]
    assert tensor_of(basis, images) == tensor_of(basis, star_r)
    # images are real combinations of the real basis
    for x in images:
        assert all(c.is_real() for c in basis.coordinates(x))


def test_cayley_on_generators():
    form = QuadraticForm.standard(4)
    t = tau_element(form, [1, 0, 0, 0])
    p = psi_map(form, form.tau([1, 0, 0, 0]))
    assert cayley(t) == t.scale(I)
    assert cayley(p) == p.scale(-I)
    assert cayley(rot(form, [1, 0, 0, 0], [0, 1, 0, 0])) == rot(form, [1, 0, 0, 0], [0, 1, 0, 0])


def test_schrodinger_element():
    plqs = PLQS.standard(4)
    s = schrodinger_element(plqs, 2, Fraction(-1, 9))
    assert filtered_bigrades(s) == [(0, 0), (0, 1), (2, -1)]
    basis = LieBasis(plqs)
    assert star(basis, s) == s
    # kappa + lam w + Psi(w)
    want = WeylElement.scalar(4, 2) + WeylElement.z(4, 3).scale(Fraction(-1, 9)) + psi_map(plqs.form, plqs.w)
    assert s == want
