import cmath
import math

import numpy as np
import pytest
from hypothesis import given, strategies as st
from scipy import integrate

from conequant.sl2_pencil import (
    E,
    F,
    H,
    DomainError,
    candidate_spectrum,
    classify_and_conjugate,
    monodromy,
    monodromy_closed_form,
    normal_form,
    scan,
)


def test_basis_relations():
    assert np.array_equal(E @ F - F @ E, H)
    assert np.array_equal(H @ E - E @ H, 2 * E)
    assert np.array_equal(H @ F - F @ H, -2 * F)


@pytest.mark.parametrize("lam, text", [(-0.25, "elliptic, nu=0.5"), (0.0, "nilpotent"), (4.0, "hyperbolic, nu=2"),
                                       (-1.0, "elliptic, nu=1")])
def test_classify_text(lam, text):
    cls, _ = classify_and_conjugate(lam)
    assert str(cls) == text


@given(st.floats(-50, 50).filter(lambda x: abs(x) > 1e-6 or x == 0))
def test_conjugator_in_sl2(lam):
    cls, a = classify_and_conjugate(lam)
    assert abs(np.linalg.det(a) - 1) < 1e-10
    x = lam * E + F
    ev = np.sort_complex(np.linalg.eigvals(a @ x @ np.linalg.inv(a)))
    want = np.sort_complex(np.array([cmath.sqrt(lam), -cmath.sqrt(lam)]))
    assert np.allclose(ev, want, atol=1e-7 * max(1, abs(lam)))


def test_normal_forms():
    nf = normal_form(-0.25, kappa=2.0)
    assert np.allclose(nf, 2 * np.eye(2) - 0.5j * (F - E))
    nf = normal_form(4.0, kappa=1.0)
    assert np.allclose(nf, np.eye(2) - 2j * H)
    assert np.allclose(normal_form(0.0), np.eye(2) + 1j * E)


def _quad_oracle(lam):
    c = lambda th: math.cos(th) ** 2 - lam * math.sin(th) ** 2  # noqa: E731
    re, _ = integrate.quad(lambda th: (1 / c(th)).real, 0, 2 * math.pi, limit=400, epsabs=1e-13, epsrel=1e-13)
    im, _ = integrate.quad(lambda th: (1 / c(th)).imag, 0, 2 * math.pi, limit=400, epsabs=1e-13, epsrel=1e-13)
    return complex(re, im)


LAMS = [-x for x in np.geomspace(0.01, 50, 20)]


@pytest.mark.parametrize("lam", LAMS)
def test_integral_closed_form(lam):
    res = monodromy(lam)
    assert abs(res.integral - 2 * math.pi / math.sqrt(-lam)) < 1e-10 * abs(res.integral)


@pytest.mark.parametrize("lam", [-0.3 + 0.2j, 1 + 1j, 2j, -4 - 0.5j, 3 - 0.3j])
def test_complex_integral(lam):
    res = monodromy(lam)
    ref = monodromy_closed_form(lam)
    assert abs(res.integral - ref) < 1e-10 * abs(ref)
    assert abs(res.integral - _quad_oracle(lam)) < 1e-8 * abs(ref)
    # |exp(-i I)| computed two ways
    assert res.abs_M == pytest.approx(abs(res.M), rel=1e-9)


@pytest.mark.parametrize("m", range(1, 11))
def test_trivial_monodromy_at_candidates(m):
    assert abs(monodromy(-1 / m ** 2).M - 1) < 1e-10


def test_nontrivial_between_candidates():
    for lam in (-0.5, -0.1, -0.3, -2.0):
        assert abs(monodromy(lam).M - 1) > 1e-3


def test_abs_m_at_i():
    up, down = monodromy(1j), monodromy(-1j)
    assert abs(up.abs_M - 1) > 0.1
    assert up.abs_M > 1 > down.abs_M
    assert up.abs_M * down.abs_M == pytest.approx(1.0, rel=1e-12)
    # I(i) = 2 pi / sqrt(-i) = sqrt(2) pi (1 + i), so |M| = exp(sqrt(2) pi)
    assert up.abs_M == pytest.approx(math.exp(math.sqrt(2) * math.pi), rel=1e-10)


@pytest.mark.parametrize("lam", [0.0, 0.5, 3.0])
def test_domain(lam):
    with pytest.raises(DomainError):
        monodromy(lam)
    with pytest.raises(DomainError):
        monodromy_closed_form(lam)


def test_candidate_spectrum():
    assert candidate_spectrum(2.0, 3) == [-4.0, -1.0, -4 / 9]
    with pytest.raises(ValueError):
        candidate_spectrum(0.0)


def test_scan_hits_only_candidates():
    res = scan(-1.2, -0.005, 0.005)
    assert res.ok
    assert res.hits == [-1.0, -0.25, -0.04, -0.01]
    assert len(res.grid) == 240


def test_scan_fine_grid():
    # only m = 1, 2, 5, 10 give grid points; the grid points nearest the
    # others stay above the threshold
    res = scan(-1.2, -0.01, 1e-3)
    assert res.ok
    assert res.hits == [-1.0, -0.25, -0.04, -0.01]


def test_scan_kappa_two():
    res = scan(-4.5, -0.5, 0.01, kappa=2.0)
    assert res.ok
    assert res.hits == [-4.0, -1.0]
