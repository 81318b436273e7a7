"""Laguerre-basis discretization of the radial Schroedinger family.

Functions on the half line carry the inner product ``<u, v> = int 1/2 t u v dt``.
The basis is::

    phi_k(t) = N_k t^l exp(-beta t / 2) L_k^(2l+1)(beta t),   k = 0 .. N-1

with ``N_k`` making it orthonormal.  Writing ``x = beta t`` and
``p_k`` for the Laguerre polynomials orthonormal against ``x^(2l+1) e^-x``,
``phi_k = sqrt(2) beta^(l+1) y(t) p_k(x)`` with ``y = t^l e^(-beta t/2)``, and
every matrix element reduces to ``int x^(2l+1) e^-x p_i(x) r(x) dx`` with ``r``
a polynomial.  Those integrals are done by Gauss-Laguerre quadrature whose
nodes and the scaled values ``sqrt(w_m) p_k(x_m)`` come straight from the
eigenvectors of the Jacobi matrix (Golub-Welsch), which never overflows.

Bound states solve ``A psi = -lam B psi`` with A the matrix of
``t d^2 + 2 d - l(l+1)/t + kappa`` and B the matrix of multiplication by t.
"""

from __future__ import annotations

import math
import os
from fractions import Fraction
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg as sla
from scipy import special

from .scalar import I
from .radial import Laurent, RadialOperator, T, lower_cone_transform, radial_generators, schrodinger_radial

__all__ = [
    "RadialBasis",
    "Pencil",
    "SpectrumReport",
    "SpectralError",
    "build_basis",
    "operator_matrix",
    "assemble_pencil",
    "bound_states",
    "degeneracy_table",
    "lower_cone_pencil",
    "lower_cone_bound_states",
    "compact_spectrum",
    "hydrogen_eigenfunction",
    "eigenfunction_residual",
    "adjoint_deviations",
    "residual_and_adjoint_check",
    "default_tolerance",
    "thread_count",
]


_ZERO_L = Laurent()


class SpectralError(ArithmeticError):
    """Numerical contract violated (asymmetry, indefinite B, missing level)."""


def thread_count() -> int:
    """Worker cap from ``CONEQUANT_THREADS`` (default: 1)."""
    raw = os.environ.get("CONEQUANT_THREADS", "1")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def default_tolerance(n: int) -> float:
    """Relative tolerance for level n at N = 200."""
    return 1e-8 if n <= 3 else 1e-3


# ---------------------------------------------------------------------------
# basis and quadrature


@dataclass
class RadialBasis:
    ell: int
    size: int
    beta: float
    nodes: np.ndarray  # x_m (Laguerre variable)
    v0: np.ndarray  # sqrt(w_m) p_k(x_m), shape (size, M)
    v1: np.ndarray  # sqrt(w_m) p_k'(x_m)

    @property
    def alpha(self) -> int:
        return 2 * self.ell + 1

    @property
    def t_nodes(self) -> np.ndarray:
        return self.nodes / self.beta

    def gram(self) -> np.ndarray:
        return self.v0 @ self.v0.T

    def evaluate(self, coeffs: np.ndarray, t: np.ndarray) -> np.ndarray:
        """``sum_k coeffs_k phi_k(t)`` at arbitrary points (direct recurrence)."""
        t = np.asarray(t, dtype=float)
        x = self.beta * t
        a = self.alpha
        # log of the normalization keeps large k finite
        out = np.zeros_like(x, dtype=np.result_type(coeffs, float))
        for k, c in enumerate(coeffs):
            if c == 0:
                continue
            lognk = 0.5 * (math.log(2.0) + (2 * self.ell + 2) * math.log(self.beta) + math.lgamma(k + 1)
                           - math.lgamma(k + a + 1))
            out = out + c * np.exp(lognk) * t ** self.ell * np.exp(-x / 2) * special.eval_genlaguerre(k, a, x)
        return out


def _gauss_laguerre_tables(m: int, alpha: float, size: int):
    """Nodes and scaled values ``sqrt(w) p_k``, ``sqrt(w) p_k'`` at the nodes."""
    k = np.arange(m)
    diag = 2 * k + alpha + 1
    off = -np.sqrt(k[1:] * (k[1:] + alpha))
    x, vec = sla.eigh_tridiagonal(diag, off)
    sign = np.sign(vec[0])
    sign[sign == 0] = 1
    v0 = (vec * sign)[:size]
    # p_k' = -sum_{j<k} (c_k/c_j) p_j with c_k/c_{k-1} = sqrt(k/(k+alpha)); no division by x
    v1 = np.zeros_like(v0)
    acc = np.zeros(v0.shape[1])
    for j in range(1, size):
        acc = math.sqrt(j / (j + alpha)) * (acc + v0[j - 1])
        v1[j] = -acc
    return x, v0, v1


def build_basis(ell: int, size: int, beta: float = 1.0, extra_nodes: int = 6) -> RadialBasis:
    """Orthonormal Laguerre basis with its quadrature tables."""
    if size < 1:
        raise ValueError("basis size must be >= 1")
    if not beta > 0:
        raise ValueError("scale beta must be positive")
    if ell < 0:
        raise ValueError("ell must be >= 0")
    m = size + ell + extra_nodes
    x, v0, v1 = _gauss_laguerre_tables(m, 2 * ell + 1, size)
    return RadialBasis(ell, size, float(beta), x, v0, v1)


def _numeric_laurent(c) -> Dict[int, complex]:
    out: Dict[int, complex] = {}
    for (a, kap, lam), v in c.terms.items():
        if kap or lam:
            raise ValueError("substitute kappa and lambda before building matrices")
        out[a] = out.get(a, 0) + complex(v)
    return out


def _lmul(p: Dict[int, complex], q: Dict[int, complex]) -> Dict[int, complex]:
    out: Dict[int, complex] = {}
    for a, x in p.items():
        for b, y in q.items():
            out[a + b] = out.get(a + b, 0) + x * y
    return out


def _ladd(*ps: Dict[int, complex]) -> Dict[int, complex]:
    out: Dict[int, complex] = {}
    for p in ps:
        for a, x in p.items():
            out[a] = out.get(a, 0) + x
    return {a: x for a, x in out.items() if x != 0}


def conjugated_coefficients(op: RadialOperator, ell: int, beta: float):
    """Coefficients ``d_j`` of ``y^-1 op y`` with ``y = t^l e^(-beta t/2)``.

    Done on Laurent coefficients so that cancelling powers of 1/t cancel
    exactly instead of at the quadrature nodes.
    """
    if op.order() > 2:
        raise ValueError("operators of order > 2 are not supported")
    c = {j: _numeric_laurent(op.coeffs.get(j, _ZERO_L)) for j in range(3)}
    g1 = {-1: float(ell), 0: -beta / 2}
    g2 = {-2: float(ell * (ell - 1)), -1: -ell * beta, 0: beta * beta / 4}
    d2 = _ladd(c[2])
    d1 = _ladd(_lmul(c[2], {a: 2 * x for a, x in g1.items()}), c[1])
    d0 = _ladd(_lmul(c[2], g2), _lmul(c[1], g1), c[0])
    return d0, d1, d2


def _powers(d: Dict[int, complex], t: np.ndarray, shift: int = 0) -> np.ndarray:
    out = np.zeros_like(t, dtype=complex)
    for a, x in d.items():
        out = out + x * t ** (a + shift)
    return out


def operator_matrix(basis: RadialBasis, op: RadialOperator) -> np.ndarray:
    """``M[i, k] = <phi_i, op phi_k>`` for an operator of order <= 2."""
    d0, d1, d2 = conjugated_coefficients(op, basis.ell, basis.beta)
    t = basis.t_nodes
    x = basis.nodes
    b = basis.beta
    g = _powers(d0, t) * basis.v0 + b * _powers(d1, t) * basis.v1
    if d2:
        k = np.arange(basis.size)[:, None]
        # x p'' = -(alpha + 1 - x) p' - k p  (Laguerre equation)
        xpp = -(basis.alpha + 1 - x) * basis.v1 - k * basis.v0
        if min(d2) >= 1:
            g = g + b * _powers(d2, t, shift=-1) * xpp
        else:
            g = g + b * b * _powers(d2, t) * xpp / x
    m = basis.v0 @ g.T
    if not np.any(m.imag):
        return m.real
    return m


# ---------------------------------------------------------------------------
# pencil


@dataclass
class Pencil:
    a: np.ndarray
    b: np.ndarray
    basis: RadialBasis
    kappa: float
    asymmetry: float


def _symmetrize(m: np.ndarray, tol: float, what: str) -> Tuple[np.ndarray, float]:
    asym = float(np.max(np.abs(m - m.T))) if m.size else 0.0
    if asym >= tol:
        raise SpectralError(f"{what} asymmetry {asym:.3e} exceeds {tol:.1e}")
    return (m + m.T) / 2, asym


def assemble_pencil(basis: RadialBasis, kappa: float, sym_tol: float = 1e-10) -> Pencil:
    """Matrices of ``t d^2 + 2 d - l(l+1)/t + kappa`` and of ``t``."""
    op = schrodinger_radial(basis.ell, kappa=_q(kappa), lam=0)
    a = operator_matrix(basis, op)
    bm = operator_matrix(basis, _t_op())
    a, asym_a = _symmetrize(np.real_if_close(a), sym_tol, "A")
    bm, asym_b = _symmetrize(np.real_if_close(bm), sym_tol, "B")
    return Pencil(a, bm, basis, float(kappa), max(asym_a, asym_b))


def _t_op() -> RadialOperator:
    return RadialOperator.mult(T)


def _q(x):
    """Exact rational for a float parameter (used only to build coefficients)."""
    return Fraction(x).limit_denominator(10 ** 12) if isinstance(x, float) else x


def _solve(p: Pencil) -> Tuple[np.ndarray, np.ndarray]:
    try:
        sla.cholesky(p.b, lower=True)
    except sla.LinAlgError as exc:
        raise SpectralError("B is not positive definite") from exc
    mu, vec = sla.eigh(p.a, p.b)
    return -mu, vec


def bound_states(p: Pencil, count: Optional[int] = None, with_residuals: bool = False):
    """Negative ``lam`` with ``A psi = -lam B psi``, ascending (most negative first)."""
    lam, vec = _solve(p)
    order = np.argsort(lam)
    lam, vec = lam[order], vec[:, order]
    neg = lam < 0
    lam, vec = lam[neg], vec[:, neg]
    if count is not None:
        lam, vec = lam[:count], vec[:, :count]
    if not with_residuals:
        return lam.tolist()
    res = []
    for j in range(len(lam)):
        v = vec[:, j]
        r = p.a @ v + lam[j] * (p.b @ v)
        res.append(float(np.linalg.norm(r) / np.linalg.norm(p.b @ v)))
    return lam.tolist(), res


def all_eigenvalues(p: Pencil) -> np.ndarray:
    lam, _ = _solve(p)
    return np.sort(lam)


# ---------------------------------------------------------------------------
# degeneracy table


@dataclass
class SpectrumReport:
    kappa: float
    size: int
    beta: float
    rows: List[dict] = field(default_factory=list)  # n, ell, lambda, expected, rel_err, residual, N, beta
    degeneracy: Dict[int, int] = field(default_factory=dict)
    absent: Dict[Tuple[int, int], bool] = field(default_factory=dict)  # (n, ell >= n) -> level absent
    missing: List[Tuple[int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.missing and all(self.absent.values()) and all(
            self.degeneracy[n] == n * n for n in self.degeneracy)

    def csv_rows(self) -> List[dict]:
        return sorted(self.rows, key=lambda r: (r["n"], r["ell"]))


def _per_ell(args):
    ell, kappa, size, beta = args
    p = assemble_pencil(build_basis(ell, size, beta), kappa)
    return ell, bound_states(p, with_residuals=True)


def degeneracy_table(kappa: float, n_max: int, size: int = 200, beta: Optional[float] = None,
                     ell_max: Optional[int] = None, tolerances=None, cone: str = "+") -> SpectrumReport:
    """Collect per-l detections of ``-kappa^2/(4 n^2)`` and their multiplicities.

    Levels with ``l < n`` must be present; pencils with ``l >= n`` (up to
    ``ell_max``, default ``n_max``) must not show the level within ten times
    the tolerance.
    """
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    beta = float(kappa) if beta is None else float(beta)
    ell_max = n_max if ell_max is None else ell_max
    tol = tolerances or default_tolerance
    k_eff = kappa if cone == "+" else -kappa
    jobs = [(ell, k_eff, size, beta) for ell in range(ell_max + 1)]
    with ThreadPoolExecutor(max_workers=thread_count()) as pool:
        results = dict(pool.map(_per_ell, jobs))
    rep = SpectrumReport(float(kappa), size, beta)
    for n in range(1, n_max + 1):
        expected = -kappa * kappa / (4 * n * n)
        total = 0
        for ell in range(ell_max + 1):
            lams, res = results[ell]
            if not lams:
                best, r = math.nan, math.nan
                rel = math.inf
            else:
                j = int(np.argmin([abs(x - expected) for x in lams]))
                best, r = lams[j], res[j]
                rel = abs(best - expected) / abs(expected)
            if ell < n:
                if rel < tol(n):
                    total += 2 * ell + 1
                    rep.rows.append({"n": n, "ell": ell, "lambda": best, "expected": expected, "rel_err": rel,
                                     "residual": r, "N": size, "beta": beta})
                else:
                    rep.missing.append((n, ell))
            else:
                rep.absent[(n, ell)] = not rel < 10 * tol(n)
        rep.degeneracy[n] = total
    return rep


# ---------------------------------------------------------------------------
# lower cone and compact generator


def lower_cone_pencil(kappa: float, ell: int, size: int, beta: float = 1.0) -> Pencil:
    """Pencil of the lower-cone operator written on the positive half line.

    The change of variables maps the Schroedinger operator at ``kappa`` to the
    upper-cone form at ``-kappa``; the matrix is built from that transform.
    """
    op = lower_cone_transform(schrodinger_radial(ell, kappa=_q(kappa), lam=0))
    basis = build_basis(ell, size, beta)
    a, _ = _symmetrize(np.real_if_close(operator_matrix(basis, op)), 1e-10, "A")
    b, _ = _symmetrize(operator_matrix(basis, _t_op()), 1e-10, "B")
    return Pencil(a, b, basis, -float(kappa), 0.0)


def lower_cone_bound_states(kappa: float, ell: int, size: int, beta: float = 1.0, threshold: float = -1e-10):
    """Eigenvalues of the lower-cone pencil below ``threshold`` (expected: none),
    and the smallest positive eigenvalue."""
    if not kappa > 0:
        raise ValueError("kappa must be positive")
    lam = all_eigenvalues(lower_cone_pencil(kappa, ell, size, beta))
    negative = [float(x) for x in lam if x < threshold]
    positive = lam[lam > 0]
    return negative, float(positive.min()) if positive.size else math.nan


def compact_spectrum(ell: int, size: int = 60, beta: float = 2.0) -> List[float]:
    """Eigenvalues of ``i(F - E) = -t d^2 - 2 d + l(l+1)/t + t``."""
    g = radial_generators(ell)
    op = (g["f"] - g["e"]).scale(I)
    m = np.real_if_close(operator_matrix(build_basis(ell, size, beta), op))
    m, _ = _symmetrize(np.asarray(m, dtype=float), 1e-10, "i(F-E)")
    return sorted(np.linalg.eigvalsh(m).tolist())




# ---------------------------------------------------------------------------
# closed-form eigenfunctions and the star structure


def hydrogen_eigenfunction(n: int, ell: int, kappa: float):
    """``psi(t) = t^l exp(-kappa t/(2n)) L_{n-l-1}^(2l+1)(kappa t/n)`` with its
    first two derivatives, as callables."""
    if not n > ell >= 0:
        raise ValueError("need n > ell >= 0")
    a = 2 * ell + 1
    m = n - ell - 1
    s = kappa / n

    def parts(t):
        t = np.asarray(t, dtype=float)
        x = s * t
        p = special.eval_genlaguerre(m, a, x)
        dp = -s * special.eval_genlaguerre(m - 1, a + 1, x) if m >= 1 else np.zeros_like(x)
        ddp = s * s * special.eval_genlaguerre(m - 2, a + 2, x) if m >= 2 else np.zeros_like(x)
        return p, dp, ddp, s

    def psi(t):
        t = np.asarray(t, dtype=float)
        return t ** ell * np.exp(-s * t / 2) * parts(t)[0]

    return psi, parts


def eigenfunction_residual(n: int, ell: int, kappa: float, nodes: int = 80) -> float:
    """``||S_kappa(-kappa^2/4n^2) psi|| / ||psi||`` in the half-line inner product.

    Uses scipy's generalized Gauss-Laguerre rule at the eigenfunction's own
    scale, independent of the basis quadrature.
    """
    lam = -kappa * kappa / (4 * n * n)
    _, parts = hydrogen_eigenfunction(n, ell, kappa)
    s = kappa / n
    x, w = special.roots_genlaguerre(nodes, 2 * ell + 1)
    t = x / s
    p, dp, ddp, _ = parts(t)
    g1 = ell / t - s / 2
    g2 = g1 * g1 - ell / t ** 2
    # S psi / y with y = t^l e^{-s t/2}
    r = t * (ddp + 2 * g1 * dp + g2 * p) + 2 * (dp + g1 * p) + (kappa + lam * t - ell * (ell + 1) / t) * p
    # int 1/2 t y^2 f^2 dt = 1/2 s^-(2l+2) sum w f(x)^2; the prefactor cancels in the ratio
    num = float(np.sum(w * r * r))
    den = float(np.sum(w * p * p))
    return math.sqrt(num / den)


def adjoint_deviations(ell: int, size: int = 20, beta: float = 1.0, pairs: int = 20, plqs=None) -> Dict[str, float]:
    """Max ``|<rho(d) f, g> - <f, rho(d*) g>|`` over basis pairs for d in e, h, f.

    ``d*`` comes from the symbolic star structure and is mapped to the radial
    model through its decomposition in span{e, h, f, 1}.
    """
    from .cone import LieBasis, PLQS, sl2_triple, star
    from .radial import IsotypicParams, isotypic_restrict

    plqs = plqs or PLQS.standard(4)
    lb = LieBasis(plqs)
    triple = sl2_triple(plqs)
    basis = build_basis(ell, size, beta)
    params = IsotypicParams(ell)
    idx = [(i, (3 * i + 1) % size) for i in range(pairs)] if size > 1 else [(0, 0)] * pairs
    out = {}
    for name, d in (("e", triple.e), ("h", triple.h), ("f", triple.f)):
        m = operator_matrix(basis, isotypic_restrict(d, params, plqs)).astype(complex)
        ms = operator_matrix(basis, isotypic_restrict(star(lb, d), params, plqs)).astype(complex)
        dev = 0.0
        for a, b in idx[:pairs]:
            lhs = np.conj(m[b, a])  # <rho(d) phi_a, phi_b>, basis functions are real
            rhs = ms[a, b]
            dev = max(dev, abs(lhs - rhs))
        out[name] = float(dev)
    return out


def residual_and_adjoint_check(n: int, ell: int, kappa: float = 1.0, size: int = 20, beta: Optional[float] = None):
    """Eigenfunction residual and generator skewness deviations."""
    if not n > ell:
        raise ValueError("need n > ell")
    res = eigenfunction_residual(n, ell, kappa)
    dev = adjoint_deviations(ell, size=size, beta=kappa if beta is None else beta)
    return res, dev
