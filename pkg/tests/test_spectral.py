import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy import integrate, special

from conequant.spectral import (
    SpectralError,
    adjoint_deviations,
    all_eigenvalues,
    assemble_pencil,
    bound_states,
    build_basis,
    compact_spectrum,
    default_tolerance,
    degeneracy_table,
    eigenfunction_residual,
    lower_cone_bound_states,
    operator_matrix,
    thread_count,
)
from conequant.spectral import _gauss_laguerre_tables


def _closed_form(ell, size, beta, kappa):
    # B = J / beta with J the Jacobi matrix; A = beta^2/4 B - beta diag(k + l + 1) + kappa
    a = 2 * ell + 1
    k = np.arange(size)
    off = -np.sqrt(k[1:] * (k[1:] + a))
    j = np.diag(2 * k + a + 1.0) + np.diag(off, 1) + np.diag(off, -1)
    b = j / beta
    return beta ** 2 / 4 * b - beta * np.diag(k + ell + 1.0) + kappa * np.eye(size), b


@pytest.mark.parametrize("ell, alpha", [(0, 1), (2, 5)])
def test_quadrature_tables_against_scipy(ell, alpha):
    size, m = 12, 18
    x, v0, v1 = _gauss_laguerre_tables(m, alpha, size)
    xs, ws = special.roots_genlaguerre(m, alpha)
    assert np.allclose(x, xs, rtol=1e-12)
    for k in range(size):
        norm = math.sqrt(math.gamma(k + alpha + 1) / math.factorial(k))
        p = special.eval_genlaguerre(k, alpha, xs) / norm
        dp = -special.eval_genlaguerre(k - 1, alpha + 1, xs) / norm if k else 0 * xs
        assert np.allclose(v0[k], np.sqrt(ws) * p, atol=1e-12)
        assert np.allclose(v1[k], np.sqrt(ws) * dp, atol=1e-10)


def test_gram_is_identity():
    b = build_basis(3, 80, 0.7)
    assert np.allclose(b.gram(), np.eye(80), atol=1e-12)


@pytest.mark.parametrize("ell, beta", [(0, 1.0), (1, 2.5)])
def test_basis_normalization_by_direct_integration(ell, beta):
    b = build_basis(ell, 6, beta)
    for i, j in [(0, 0), (1, 1), (5, 5), (0, 3), (2, 4)]:
        ci = np.eye(6)[i]
        cj = np.eye(6)[j]
        val, _ = integrate.quad(lambda t: 0.5 * t * b.evaluate(ci, t) * b.evaluate(cj, t), 0, np.inf, limit=200)
        assert val == pytest.approx(1.0 if i == j else 0.0, abs=1e-9)


@pytest.mark.parametrize("ell, size, beta, kappa", [(0, 40, 1.0, 1.0), (2, 60, 0.7, 1.3), (5, 30, 3.0, -2.0)])
def test_pencil_matches_closed_form(ell, size, beta, kappa):
    p = assemble_pencil(build_basis(ell, size, beta), kappa)
    a, b = _closed_form(ell, size, beta, kappa)
    assert np.max(np.abs(p.b - b)) < 1e-10 * np.max(np.abs(b))
    assert np.max(np.abs(p.a - a)) < 1e-10 * np.max(np.abs(a))


def test_asymmetry_small_at_large_size():
    p = assemble_pencil(build_basis(0, 400, 1.0), 1.0)
    assert p.asymmetry < 1e-10


def test_asymmetry_guard():
    with pytest.raises(SpectralError):
        assemble_pencil(build_basis(0, 100, 1.0), 1.0, sym_tol=0.0)


@pytest.mark.parametrize("bad", [dict(ell=0, size=0), dict(ell=0, size=5, beta=0.0), dict(ell=-1, size=5)])
def test_build_basis_validation(bad):
    with pytest.raises(ValueError):
        build_basis(**bad)


def test_operator_order_limit():
    from conequant.radial import RadialOperator

    with pytest.raises(ValueError):
        operator_matrix(build_basis(0, 5), RadialOperator({3: 1}))


@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_hydrogen_levels(ell):
    lam = bound_states(assemble_pencil(build_basis(ell, 200, 1.0), 1.0))
    for i, n in enumerate(range(ell + 1, ell + 4)):
        exp = -1 / (4 * n * n)
        assert abs(lam[i] - exp) / abs(exp) < 1e-8


@given(st.floats(0.3, 4.0), st.integers(0, 2))
@settings(max_examples=8)
def test_kappa_scaling(kappa, ell):
    # eigenvalues scale as kappa^2 with basis scale beta = kappa
    one = bound_states(assemble_pencil(build_basis(ell, 120, 1.0), 1.0), count=3)
    k = bound_states(assemble_pencil(build_basis(ell, 120, kappa), kappa), count=3)
    assert np.allclose(np.array(k), kappa ** 2 * np.array(one), rtol=1e-9)


def test_residuals_reported():
    lam, res = bound_states(assemble_pencil(build_basis(0, 60, 1.0), 1.0), count=2, with_residuals=True)
    assert len(lam) == len(res) == 2
    assert max(res) < 1e-10


def test_degeneracy_table():
    rep = degeneracy_table(1.0, 5, size=200)
    assert rep.ok
    assert rep.degeneracy == {n: n * n for n in range(1, 6)}
    assert all(rep.absent.values()) and rep.absent
    assert not rep.missing
    assert [(r["n"], r["ell"]) for r in rep.csv_rows()][:4] == [(1, 0), (2, 0), (2, 1), (3, 0)]


def test_threads_do_not_change_results(monkeypatch):
    one = degeneracy_table(1.0, 3, size=120)
    monkeypatch.setenv("CONEQUANT_THREADS", "4")
    assert thread_count() == 4
    four = degeneracy_table(1.0, 3, size=120)
    assert one.rows == four.rows
    monkeypatch.setenv("CONEQUANT_THREADS", "nonsense")
    assert thread_count() == 1


def test_default_tolerance():
    assert default_tolerance(3) == 1e-8
    assert default_tolerance(4) == 1e-3


@pytest.mark.parametrize("ell", [0, 1, 2, 3])
def test_lower_cone_has_no_bound_states(ell):
    mins = []
    for size in (100, 200, 400):
        neg, pos = lower_cone_bound_states(1.0, ell, size)
        assert neg == []
        mins.append(pos)
    assert mins[0] > mins[1] > mins[2]


def test_lower_cone_requires_positive_kappa():
    with pytest.raises(ValueError):
        lower_cone_bound_states(-1.0, 0, 10)


def test_flipped_kappa_upper_cone_has_no_negatives():
    lam = all_eigenvalues(assemble_pencil(build_basis(0, 100, 1.0), -1.0))
    assert lam.min() > 0


@pytest.mark.parametrize("ell", [0, 1, 2])
def test_compact_spectrum(ell):
    ev = compact_spectrum(ell, 60)[:10]
    assert np.allclose(ev, [2 * (k + ell + 1) for k in range(10)], atol=1e-8)


@pytest.mark.parametrize("n, ell", [(1, 0), (2, 0), (2, 1), (3, 1), (4, 2)])
def test_eigenfunction_residual(n, ell):
    assert eigenfunction_residual(n, ell, 1.0) < 1e-8
    assert eigenfunction_residual(n, ell, 2.5) < 1e-8


@pytest.mark.parametrize("n, ell", [(2, 0), (3, 1)])
def test_eigenvector_matches_closed_form(n, ell):
    from conequant.spectral import _solve, hydrogen_eigenfunction

    basis = build_basis(ell, 120, 1.0)
    lam, vec = _solve(assemble_pencil(basis, 1.0))
    j = int(np.argmin(np.abs(lam + 1 / (4 * n * n))))
    t = np.linspace(0.1, 40, 60)
    got = basis.evaluate(vec[:, j], t)
    psi, _ = hydrogen_eigenfunction(n, ell, 1.0)
    want = psi(t)
    scale = np.dot(got, want) / np.dot(want, want)
    assert np.max(np.abs(got - scale * want)) < 1e-8 * np.max(np.abs(got))


def test_adjoint_deviations():
    dev = adjoint_deviations(0, size=20, beta=1.0, pairs=20)
    assert set(dev) == {"e", "h", "f"}
    assert max(dev.values()) < 1e-9
    dev = adjoint_deviations(2, size=20, beta=0.5, pairs=20)
    assert max(dev.values()) < 1e-9
