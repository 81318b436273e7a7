"""Conjugacy classes of ``X = lam E + F`` in sl2(R) and the monodromy integral.

With ``E = [[0,1],[0,0]]``, ``F = [[0,0],[1,0]]``, ``H = diag(1,-1)`` the
element ``X`` has eigenvalues ``+-sqrt(lam)``.  Explicit A in SL2(R) bring it
to a normal form::

    lam < 0:  A X A^-1 = nu (F - E)    A = diag(nu^-1/2, nu^1/2)
    lam = 0:  A X A^-1 = -E            A = [[0, 1], [-1, 0]]
    lam > 0:  A X A^-1 = nu H          A = [[1, nu], [-1, nu]] / sqrt(2 nu)

with ``nu = sqrt|lam|``.

The monodromy of the Schroedinger family around the circle is
``M = exp(-i I)`` with ``I(lam) = int_0^2pi dtheta / (cos^2 - lam sin^2)``.
In closed form ``I = 2 pi / sqrt(-lam)`` (principal branch), so M = 1 exactly
when ``lam = -1/m^2``.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple

import numpy as np

__all__ = [
    "E",
    "F",
    "H",
    "ConjugacyClass",
    "MonodromyResult",
    "DomainError",
    "classify_and_conjugate",
    "normal_form",
    "monodromy",
    "monodromy_closed_form",
    "candidate_spectrum",
    "scan",
    "ScanResult",
]

E = np.array([[0.0, 1.0], [0.0, 0.0]])
F = np.array([[0.0, 0.0], [1.0, 0.0]])
H = np.array([[1.0, 0.0], [0.0, -1.0]])
_ID = np.eye(2)


class DomainError(ValueError):
    """Parameter outside the domain where the integrand is regular."""


@dataclass(frozen=True)
class ConjugacyClass:
    tag: str  # "elliptic" | "nilpotent" | "hyperbolic"
    nu: Optional[float] = None

    def __str__(self):
        return self.tag if self.nu is None else f"{self.tag}, nu={self.nu:.15g}"


def classify_and_conjugate(lam: float, tol: float = 1e-12) -> Tuple[ConjugacyClass, np.ndarray]:
    """Class of ``lam E + F`` and a conjugator A in SL2(R) to its normal form."""
    lam = float(lam)
    x = lam * E + F
    if lam < 0:
        nu = math.sqrt(-lam)
        a = np.diag([nu ** -0.5, nu ** 0.5])
        cls, target = ConjugacyClass("elliptic", nu), nu * (F - E)
    elif lam == 0:
        a = np.array([[0.0, 1.0], [-1.0, 0.0]])
        cls, target = ConjugacyClass("nilpotent"), -E
    else:
        nu = math.sqrt(lam)
        a = np.array([[1.0, nu], [-1.0, nu]]) / math.sqrt(2 * nu)
        cls, target = ConjugacyClass("hyperbolic", nu), nu * H
    got = a @ x @ np.linalg.inv(a)
    scale = max(1.0, abs(lam))
    if abs(np.linalg.det(a) - 1) > tol or np.max(np.abs(got - target)) > tol * scale:
        raise ArithmeticError(f"conjugator check failed for lam={lam}")
    return cls, a


def normal_form(lam: float, kappa: float = 1.0) -> np.ndarray:
    """``kappa - i A X A^-1`` as a 2x2 complex matrix."""
    cls, a = classify_and_conjugate(lam)
    return kappa * _ID - 1j * (a @ (lam * E + F) @ np.linalg.inv(a))


# ---------------------------------------------------------------------------
# monodromy


@dataclass(frozen=True)
class MonodromyResult:
    lam: complex
    integral: complex  # I(lam)
    M: complex  # exp(-i I)
    abs_M: float  # exp(Im(lam) int sin^2/|c|^2)
    panels: int


_GL_X, _GL_W = np.polynomial.legendre.leggauss(32)


def _composite(f, panels: int) -> complex:
    edges = np.linspace(0.0, 2 * math.pi, panels + 1)
    mid = (edges[1:] + edges[:-1]) / 2
    half = (edges[1:] - edges[:-1]) / 2
    theta = (mid[:, None] + half[:, None] * _GL_X[None, :]).ravel()
    w = (half[:, None] * _GL_W[None, :]).ravel()
    return complex(np.sum(w * f(theta)))


def _adaptive(f, tol: float = 1e-12, max_panels: int = 1 << 16) -> Tuple[complex, int]:
    panels = 4
    prev = _composite(f, panels)
    while panels < max_panels:
        panels *= 2
        cur = _composite(f, panels)
        if abs(cur - prev) <= tol * max(1.0, abs(cur)):
            return cur, panels
        prev = cur
    raise ArithmeticError("monodromy quadrature did not converge")


def _check_domain(lam: complex):
    if lam.imag == 0 and lam.real >= 0:
        raise DomainError(f"lambda = {lam.real} lies on [0, inf) where the integrand is singular")


def monodromy(lam, tol: float = 1e-12) -> MonodromyResult:
    """Quadrature value of the monodromy at ``lam`` (not in [0, inf))."""
    lam = complex(lam)
    _check_domain(lam)

    def inv_c(th):
        return 1.0 / (np.cos(th) ** 2 - lam * np.sin(th) ** 2)

    def weight(th):
        c = np.cos(th) ** 2 - lam * np.sin(th) ** 2
        return np.sin(th) ** 2 / np.abs(c) ** 2

    integral, panels = _adaptive(inv_c, tol)
    if lam.imag == 0:
        integral = complex(integral.real, 0.0)
        abs_m = 1.0
    else:
        j, _ = _adaptive(weight, tol)
        # Im(1/c) = Im(lam) sin^2 / |c|^2, hence |exp(-i I)| = exp(Im I)
        abs_m = math.exp(lam.imag * j.real)
    return MonodromyResult(lam, integral, cmath.exp(-1j * integral), abs_m, panels)


def monodromy_closed_form(lam) -> complex:
    """``2 pi / sqrt(-lam)`` on the principal branch."""
    lam = complex(lam)
    _check_domain(lam)
    return 2 * math.pi / cmath.sqrt(-lam)


def candidate_spectrum(kappa: float = 1.0, m_max: int = 10) -> List[float]:
    """``{-kappa^2/m^2 : m = 1..m_max}``, where the monodromy is trivial."""
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    return [-kappa * kappa / (m * m) for m in range(1, m_max + 1)]


@dataclass
class ScanResult:
    grid: np.ndarray
    deviation: np.ndarray  # |M - 1|
    hits: List[float]
    stray: List[float]  # hits farther than the window from every candidate

    @property
    def ok(self) -> bool:
        return not self.stray


def scan(start: float, stop: float, step: float, kappa: float = 1.0, threshold: float = 1e-6,
         window: float = 2e-3) -> ScanResult:
    """``|M - 1|`` on a grid of negative lambda; classify the hits.

    The monodromy is taken at ``lam / kappa^2``, the kappa = 1 point with the
    same spectrum after rescaling.
    """
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    count = int(round((stop - start) / step)) + 1
    grid = np.round(start + step * np.arange(count), 12)
    dev = np.array([abs(monodromy(float(x) / (kappa * kappa)).M - 1) for x in grid])
    hits = [float(x) for x, d in zip(grid, dev) if d < threshold]
    m_max = int(math.ceil(kappa / math.sqrt(max(abs(stop), 1e-300)))) + 2
    cands = candidate_spectrum(kappa, m_max)
    stray = [x for x in hits if min(abs(x - c) for c in cands) > window]
    return ScanResult(grid, dev, hits, stray)
