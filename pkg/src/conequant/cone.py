"""The generating Lie algebra of differential operators on a quadratic cone.

For a nondegenerate form ``Q = sum B_ij z_i z_j`` on an n-dimensional space the
operators of bidegree (0,1), (1,0) and (2,-1) that preserve the ideal (Q) span
a Lie algebra ``s~ = s + C`` with ``s = so(n+2, C)``.  The spanning set used
throughout is, in order::

    tau(e_1) .. tau(e_n)          multiplication by B(e_i, .)
    L_{e_i,e_j}  (i < j)          tau(u) d_v - tau(v) d_u
    h                             2 sum z_i d_i + (n - 2)
    One                           the constant 1 (central)
    Psi(tau(e_1)) .. Psi(tau(e_n))  w box_Q - h d^Q_w

Conventions: ``tau(v) = B(v, .)``; a covector ``c`` corresponds to the vector
``B^{-1} c`` and ``q*(c) = c^T B^{-1} c``.  All brackets are evaluated in the
Weyl algebra and compared modulo the left ideal ``I.D(V)``.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .exact_linalg import identity, inverse, matmul, nullspace, rank, rref, signature, solve, transpose
from .poly import Polynomial, grlex_key
from .scalar import ONE, QI, ZERO, I, as_qi
from .weyl import (
    QuadraticForm,
    WeylElement,
    bigrade,
    commutator,
    cone_equal,
    in_left_ideal,
    normal_mul,
    preserves_ideal,
    reduce_mod_ideal,
)

__all__ = [
    "PLQS",
    "LieBasisElement",
    "LieBasis",
    "StructureConstants",
    "Sl2Triple",
    "NotInSpan",
    "VerificationFailure",
    "euler_h",
    "tau_element",
    "covector_element",
    "directional_q",
    "rot",
    "phi_map",
    "psi_map",
    "build_spanning_set",
    "structure_constants",
    "verify_so_structure",
    "sl2_triple",
    "dual_pair",
    "star",
    "cayley",
    "star_and_cayley",
    "schrodinger_element",
    "orthogonal_sample",
    "check_bracket_table",
    "verify_phi_psi",
    "jm_solutions",
    "jacobi_failures",
    "killing_form",
    "derived_indices",
    "real_form_bases",
    "tensor_of",
    "DualPair",
]


class NotInSpan(ArithmeticError):
    """A bracket left the span of the basis modulo the cone ideal."""


class VerificationFailure(AssertionError):
    """An algebraic identity that should hold exactly did not."""


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


# ---------------------------------------------------------------------------
# quadratic space with a distinguished covector


class PLQS:
    """Lorentzian quadratic space with a covector ``w`` of dual norm -1.

    ``matrix`` must be rational symmetric with signature (n-1, 1).
    """

    def __init__(self, matrix, w: Sequence):
        self.form = QuadraticForm(matrix)
        n = self.form.n
        pos, neg, zero = signature(self.form.matrix)
        if (pos, neg, zero) != (n - 1, 1, 0):
            raise ValueError(f"form has signature ({pos},{neg}), need ({n - 1},1)")
        self.w = [_fr(x) for x in w]
        if len(self.w) != n:
            raise ValueError("covector length differs from dimension")
        if self.form.dual_value(self.w) != -1:
            raise ValueError(f"q*(w) = {self.form.dual_value(self.w)}, need -1")

    @classmethod
    def standard(cls, n: int) -> "PLQS":
        """diag(1,..,1,-1) with w = z_n."""
        return cls(QuadraticForm.standard(n).matrix, [0] * (n - 1) + [1])

    @property
    def n(self) -> int:
        return self.form.n

    def v_w(self) -> List[Fraction]:
        return self.form.tau_inverse(self.w)

    def __repr__(self):
        return f"PLQS(n={self.n}, w={[str(x) for x in self.w]})"


def _form_of(x) -> QuadraticForm:
    return x.form if isinstance(x, PLQS) else x


# ---------------------------------------------------------------------------
# the generators as Weyl-algebra elements


def euler_h(n: int) -> WeylElement:
    """Shifted Euler operator ``2 sum z_i d_i + (n - 2)``."""
    terms = {((0,) * n, (0,) * n): n - 2}
    for i in range(n):
        e = tuple(int(k == i) for k in range(n))
        terms[(e, e)] = 2
    return WeylElement(n, terms)


def covector_element(c: Sequence) -> WeylElement:
    """Multiplication by the linear function with coefficients ``c``."""
    return WeylElement.linear_form(c)


def tau_element(form, v: Sequence) -> WeylElement:
    """Multiplication by ``B(v, .)``."""
    return covector_element(_form_of(form).tau(v))


def directional_q(form, c: Sequence) -> WeylElement:
    """Derivative along the vector dual to the covector ``c``."""
    return WeylElement.directional(_form_of(form).tau_inverse(c))


def rot(form, u: Sequence, v: Sequence) -> WeylElement:
    """``L_{u,v} = tau(u) d_v - tau(v) d_u``."""
    f = _form_of(form)
    return normal_mul(tau_element(f, u), WeylElement.directional(v)) - normal_mul(
        tau_element(f, v), WeylElement.directional(u)
    )


def psi_map(form, c: Sequence) -> WeylElement:
    """``c box_Q - h d^Q_c``: the (2,-1) operator attached to covector ``c``."""
    f = _form_of(form)
    n = f.n
    return normal_mul(covector_element(c), f.box()) - normal_mul(euler_h(n), directional_q(f, c))


def phi_map(form, d: WeylElement) -> WeylElement:
    """``sum B_ij z_i d z_j``."""
    f = _form_of(form)
    n = f.n
    out = WeylElement.zero(n)
    for i in range(n):
        left = normal_mul(WeylElement.z(n, i), d)
        for j in range(n):
            b = f.matrix[i][j]
            if b:
                out = out + normal_mul(left, WeylElement.z(n, j)).scale(b)
    return out


def _unit(n: int, i: int) -> List[Fraction]:
    return [Fraction(int(k == i)) for k in range(n)]


# ---------------------------------------------------------------------------
# basis and coordinates


@dataclass(frozen=True)
class LieBasisElement:
    tag: str  # "Mult" | "Rot" | "H" | "One" | "Psi"
    data: tuple
    element: WeylElement = field(compare=False)

    @property
    def grade(self) -> Tuple[int, int]:
        return {"Mult": (0, 1), "Rot": (1, 0), "H": (1, 0), "One": (0, 0), "Psi": (2, -1)}[self.tag]

    @property
    def label(self) -> str:
        if self.tag == "Mult":
            return f"tau(e{self.data[0] + 1})"
        if self.tag == "Rot":
            return f"L(e{self.data[0] + 1},e{self.data[1] + 1})"
        if self.tag == "Psi":
            return f"Psi(tau(e{self.data[0] + 1}))"
        return {"H": "h", "One": "1"}[self.tag]


def build_spanning_set(space) -> List[LieBasisElement]:
    """Ordered spanning set of s~ (size n(n+3)/2 + 2)."""
    f = _form_of(space)
    n = f.n
    out = [LieBasisElement("Mult", (i,), tau_element(f, _unit(n, i))) for i in range(n)]
    for i, j in itertools.combinations(range(n), 2):
        out.append(LieBasisElement("Rot", (i, j), rot(f, _unit(n, i), _unit(n, j))))
    out.append(LieBasisElement("H", (), euler_h(n)))
    out.append(LieBasisElement("One", (), WeylElement.one(n)))
    for i in range(n):
        out.append(LieBasisElement("Psi", (i,), psi_map(f, f.tau(_unit(n, i)))))
    return out


class LieBasis:
    """A spanning set together with an exact coordinate map modulo the ideal."""

    def __init__(self, space, elements: Optional[List[LieBasisElement]] = None):
        self.form = _form_of(space)
        self.space = space
        self.n = self.form.n
        self.q = self.form.polynomial()
        self.elements = elements if elements is not None else build_spanning_set(space)
        self.reduced = [reduce_mod_ideal(b.element, self.q) for b in self.elements]
        keys = sorted({k for r in self.reduced for k in r.terms})
        self.keys = keys
        self._kidx = {k: i for i, k in enumerate(keys)}
        m = [[r.terms.get(k, ZERO) for r in self.reduced] for k in keys]
        # choose rows giving an invertible square block
        _, rows = rref(transpose(m))
        if len(rows) != len(self.elements):
            raise VerificationFailure("spanning set is linearly dependent modulo the ideal")
        self._rows = [keys[r] for r in rows]
        self._inv = inverse([m[r] for r in rows])
        self._m = m
        self.index = {b.label: i for i, b in enumerate(self.elements)}

    def __len__(self):
        return len(self.elements)

    def labels(self) -> List[str]:
        return [b.label for b in self.elements]

    def coordinates(self, d: WeylElement) -> List[QI]:
        """Exact coordinates of ``d`` modulo ``I.D(V)``; raises NotInSpan."""
        r = reduce_mod_ideal(d, self.q)
        for k in r.terms:
            if k not in self._kidx:
                raise NotInSpan(f"term {k} is outside the span")
        rhs = [r.terms.get(k, ZERO) for k in self._rows]
        x = [sum((a * b for a, b in zip(row, rhs) if a and b), ZERO) for row in self._inv]
        # verify the full system, not only the chosen rows
        for k, row in zip(self.keys, self._m):
            s = sum((a * b for a, b in zip(row, x) if a and b), ZERO)
            if s != r.terms.get(k, ZERO):
                raise NotInSpan("element is not a combination of the basis")
        return [as_qi(v) for v in x]

    def element(self, coords: Sequence) -> WeylElement:
        out = WeylElement.zero(self.n)
        for c, b in zip(coords, self.elements):
            if c:
                out = out + b.element.scale(c)
        return out


# ---------------------------------------------------------------------------
# structure constants


@dataclass
class StructureConstants:
    basis: LieBasis
    table: List[List[List[QI]]]  # table[i][j] = coordinates of [b_i, b_j]

    @property
    def dim(self) -> int:
        return len(self.table)

    def bracket(self, x: Sequence, y: Sequence) -> List[QI]:
        d = self.dim
        out = [ZERO] * d
        for i in range(d):
            if not x[i]:
                continue
            for j in range(d):
                if not y[j]:
                    continue
                c = x[i] * y[j]
                row = self.table[i][j]
                for k in range(d):
                    if row[k]:
                        out[k] = out[k] + c * row[k]
        return out

    def ad(self, x: Sequence) -> List[List[QI]]:
        """Matrix of ad_x (columns = images of basis vectors)."""
        cols = [self.bracket(x, _qunit(self.dim, j)) for j in range(self.dim)]
        return transpose(cols)


def _qunit(d: int, i: int) -> List[QI]:
    return [ONE if k == i else ZERO for k in range(d)]


def structure_constants(basis: LieBasis) -> StructureConstants:
    d = len(basis)
    table = [[[ZERO] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        for j in range(i + 1, d):
            c = basis.coordinates(commutator(basis.elements[i].element, basis.elements[j].element))
            table[i][j] = c
            table[j][i] = [-x for x in c]
    return StructureConstants(basis, table)


# ---------------------------------------------------------------------------
# verification


def _check(report: list, ident: str, anchor: str, ok: bool, detail: str):
    report.append({"id": ident, "paper_anchor": anchor, "status": "PASS" if ok else "FAIL", "detail": detail})
    return ok


def _bilinear(form, u, v):
    return form.bilinear(u, v)


def check_bracket_table(basis: LieBasis) -> List[Tuple[str, bool]]:
    """Check the closed-form bracket relations on all basis vectors.

    Every relation is tested as an identity in D(C) (cone equality) directly on
    Weyl-algebra elements, independently of the structure-constant solve.
    """
    f = basis.form
    n = f.n
    q = basis.q
    units = [_unit(n, i) for i in range(n)]
    h = euler_h(n)
    tau = [tau_element(f, u) for u in units]
    psi = [psi_map(f, f.tau(u)) for u in units]
    L = {(a, b): rot(f, units[a], units[b]) for a in range(n) for b in range(n)}
    B = lambda a, b: f.matrix[a][b]
    results = []

    ok = True
    for (a, b), (c, d) in itertools.product(L, L):
        lhs = commutator(L[a, b], L[c, d])
        rhs = (
            L[a, d].scale(B(b, c))
            - L[b, d].scale(B(a, c))
            + L[b, c].scale(B(a, d))
            - L[a, c].scale(B(b, d))
        )
        if not cone_equal(lhs, rhs, q):
            ok = False
            break
    results.append(("[L_uv, L_wz] = B(v,w)L_uz - B(u,w)L_vz + B(u,z)L_vw - B(v,z)L_uw", ok))

    ok = all(
        cone_equal(commutator(L[a, b], tau[c]), tau[a].scale(B(b, c)) - tau[b].scale(B(a, c)), q)
        for a, b, c in itertools.product(range(n), repeat=3)
    )
    results.append(("[L_uv, tau(w)] = B(v,w)tau(u) - B(u,w)tau(v)", ok))

    ok = all(
        cone_equal(commutator(L[a, b], psi[c]), psi[a].scale(B(b, c)) - psi[b].scale(B(a, c)), q)
        for a, b, c in itertools.product(range(n), repeat=3)
    )
    results.append(("[L_uv, Psi(tau(w))] = B(v,w)Psi(tau(u)) - B(u,w)Psi(tau(v))", ok))

    ok = all(
        cone_equal(commutator(psi[a], tau[b]), L[a, b].scale(2) - h.scale(B(a, b)), q)
        for a, b in itertools.product(range(n), repeat=2)
    )
    results.append(("[Psi(tau(v)), tau(u)] = 2L_vu - B(v,u)h", ok))

    ok = all(cone_equal(commutator(h, p), p.scale(-2), q) for p in psi)
    results.append(("[h, Psi(tau(v))] = -2 Psi(tau(v))", ok))
    ok = all(cone_equal(commutator(h, t), t.scale(2), q) for t in tau)
    results.append(("[h, tau(u)] = 2 tau(u)", ok))
    ok = all(cone_equal(commutator(h, x), WeylElement.zero(n), q) for x in L.values())
    results.append(("[h, L_uv] = 0", ok))
    ok = all(not commutator(x, y) for x, y in itertools.combinations(tau, 2))
    ok = ok and all(cone_equal(commutator(x, y), WeylElement.zero(n), q) for x, y in itertools.combinations(psi, 2))
    results.append(("tau(V) and Psi(V) are abelian", ok))
    return results


def jacobi_failures(sc: StructureConstants, indices: Optional[Sequence[int]] = None):
    """Basis triples violating the Jacobi identity (empty list when it holds)."""
    idx = list(range(sc.dim)) if indices is None else list(indices)
    bad = []
    t = sc.table
    d = sc.dim
    for i, j, k in itertools.combinations(idx, 3):
        total = [ZERO] * d
        for a, b, c in ((i, j, k), (j, k, i), (k, i, j)):
            inner = t[b][c]
            for m in range(d):
                if inner[m]:
                    row = t[a][m]
                    for r in range(d):
                        if row[r]:
                            total[r] = total[r] + inner[m] * row[r]
        if any(total):
            bad.append((i, j, k))
    return bad


def derived_indices(basis: LieBasis) -> List[int]:
    """Indices of the basis of s (everything except the central One)."""
    return [i for i, b in enumerate(basis.elements) if b.tag != "One"]


def _restrict(mat, idx):
    return [[mat[i][j] for j in idx] for i in idx]


def killing_form(sc: StructureConstants, idx: Sequence[int]) -> List[List[QI]]:
    """Killing form of the subalgebra spanned by basis vectors ``idx``."""
    ads = [_restrict(sc.ad(_qunit(sc.dim, i)), idx) for i in idx]
    m = len(idx)
    out = [[ZERO] * m for _ in range(m)]
    for a in range(m):
        for b in range(a, m):
            s = ZERO
            A, Bm = ads[a], ads[b]
            for r in range(m):
                for c in range(m):
                    if A[r][c] and Bm[c][r]:
                        s = s + A[r][c] * Bm[c][r]
            out[a][b] = out[b][a] = s
    return out


def verify_so_structure(sc: StructureConstants, raise_on_failure: bool = False) -> List[dict]:
    """Check that s = [s~, s~] is so(n+2): dimension, Jacobi, Killing form, grading."""
    basis = sc.basis
    n = basis.n
    report: List[dict] = []
    d = sc.dim
    images = [sc.table[i][j] for i in range(d) for j in range(i + 1, d)]
    dim_s = rank(images)
    expect = (n + 2) * (n + 1) // 2
    _check(report, "dim_s", "s is isomorphic to so(n+2,C)", dim_s == expect, f"dim s = {dim_s} (expected {expect})")

    one = basis.index["1"]
    central = all(not any(sc.table[one][j]) for j in range(d))
    no_one = all(not img[one] for img in images)
    _check(report, "one_central", "the element 1 is central and s~ = s + C1", central and no_one,
           f"1 central: {central}; brackets avoid 1: {no_one}")

    bad = jacobi_failures(sc)
    triples = d * (d - 1) * (d - 2) // 6
    _check(report, "jacobi", "Jacobi identity on the spanning set", not bad,
           f"Jacobi: {triples - len(bad)}/{triples} triples" + (f"; first failure {bad[0]}" if bad else ""))

    idx = derived_indices(basis)
    kf = killing_form(sc, idx)
    real = all(x.is_real() for row in kf for x in row)
    pos, neg, zero = signature(kf) if real else (None, None, None)
    nondeg = rank(kf) == len(idx)
    _check(report, "killing_nondegenerate", "s is semisimple", nondeg, f"rank Killing = {rank(kf)} of {len(idx)}")
    if pos is not None:
        # the basis is real, so this is the Killing form of the real form so(p+1, q+1)
        p_, q_ = signature(basis.form.matrix)[:2]
        P, Qd = p_ + 1, q_ + 1
        exp_pos = P * Qd
        exp_neg = P * (P - 1) // 2 + Qd * (Qd - 1) // 2
        _check(report, "killing_signature", "the real span s(R) is o(V + V_{1,1})",
               (pos, neg, zero) == (exp_pos, exp_neg, 0),
               f"Killing signature ({pos}+, {neg}-, {zero}0), expected ({exp_pos}+, {exp_neg}-)")

    # One has bigrade (0,0) but sits in the first-order piece D^{1,0}
    dims = {g: 0 for g in ((0, 1), (1, 0), (2, -1))}
    for b in basis.elements:
        dims[(1, 0) if b.grade == (0, 0) else b.grade] += 1
    expect_d = {(0, 1): n, (1, 0): n * (n - 1) // 2 + 2, (2, -1): n}
    _check(report, "graded_dims", "graded pieces V*, o(Q)+C1+Ch, V", dims == expect_d,
           f"graded dims {dims[(0, 1)]}, {dims[(1, 0)]}, {dims[(2, -1)]}")

    if raise_on_failure:
        for row in report:
            if row["status"] != "PASS":
                raise VerificationFailure(f"{row['id']}: {row['detail']}")
    return report


def verify_phi_psi(space, samples: int = 10, seed: int = 0) -> bool:
    """``Phi(Psi(c)) = (2 - n) c`` on unit and random rational covectors."""
    f = _form_of(space)
    n = f.n
    rng = random.Random(seed)
    covs = [f.tau(_unit(n, i)) for i in range(n)]
    covs += [[Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(n)] for _ in range(samples)]
    q = f.polynomial()
    for c in covs:
        lhs = phi_map(f, psi_map(f, c))
        if not cone_equal(lhs, covector_element(c).scale(2 - n), q):
            return False
    return True


# ---------------------------------------------------------------------------
# sl2 triple and Jacobson-Morozov uniqueness


@dataclass
class Sl2Triple:
    e: WeylElement
    h: WeylElement
    f: WeylElement

    def relations(self, q) -> Dict[str, bool]:
        return {
            "[e,f]=h": cone_equal(commutator(self.e, self.f), self.h, q),
            "[h,e]=2e": cone_equal(commutator(self.h, self.e), self.e.scale(2), q),
            "[h,f]=-2f": cone_equal(commutator(self.h, self.f), self.f.scale(-2), q),
        }


def sl2_triple(plqs: PLQS) -> Sl2Triple:
    """``e = i w``, ``h``, ``f = i Psi(w)``; raises if a relation fails."""
    e = covector_element(plqs.w).scale(I)
    f = psi_map(plqs.form, plqs.w).scale(I)
    t = Sl2Triple(e, euler_h(plqs.n), f)
    rel = t.relations(plqs.form.polynomial())
    if not all(rel.values()):
        raise VerificationFailure(f"sl2 relations failed: {rel}")
    return t


def jm_solutions(sc: StructureConstants, e: WeylElement, h: WeylElement):
    """Solve ``[h,x] = -2x, [e,x] = h`` for x in s.

    Returns ``(particular, kernel_basis)`` in s~ coordinates, or ``(None, [])``
    when the system is inconsistent.
    """
    basis = sc.basis
    idx = derived_indices(basis)
    d = sc.dim
    ce, ch = basis.coordinates(e), basis.coordinates(h)
    ad_e = sc.ad(ce)
    ad_h = sc.ad(ch)
    rows, rhs = [], []
    for r in range(d):
        rows.append([ad_h[r][j] + (2 if r == j else 0) for j in idx])
        rhs.append(ZERO)
    for r in range(d):
        rows.append([ad_e[r][j] for j in idx])
        rhs.append(ch[r])
    sol = solve(rows, rhs)
    if sol is None:
        return None, []
    ker = nullspace(rows, ZERO, ONE)

    def lift(v):
        out = [ZERO] * d
        for k, j in enumerate(idx):
            out[j] = as_qi(v[k])
        return out

    return lift(sol), [lift(v) for v in ker]


# ---------------------------------------------------------------------------
# dual pair


def _centralizer(sc: StructureConstants, vectors: Sequence[Sequence], idx: Sequence[int]) -> List[List[QI]]:
    """Basis (s~ coordinates, supported on ``idx``) of the centralizer in span(idx)."""
    d = sc.dim
    rows = []
    for v in vectors:
        ad = sc.ad(v)
        for r in range(d):
            rows.append([ad[r][j] for j in idx])
    ker = nullspace(rows, ZERO, ONE) if rows else [_qunit(len(idx), k) for k in range(len(idx))]
    out = []
    for v in ker:
        full = [ZERO] * d
        for k, j in enumerate(idx):
            full[j] = as_qi(v[k])
        out.append(full)
    return out


def _same_span(a, b) -> bool:
    ra, rb = rank(a) if a else 0, rank(b) if b else 0
    return ra == rb == (rank(list(a) + list(b)) if (a or b) else 0)


@dataclass
class DualPair:
    k_w: List[List[QI]]
    l_w: List[List[QI]]
    k_dim: int
    l_dim: int
    l_is_sl2: bool
    mutual: bool


def dual_pair(plqs: PLQS, sc: Optional[StructureConstants] = None) -> DualPair:
    """The pair (k_w, l_w): rotations fixing v_w and their centralizer in s."""
    if sc is None:
        sc = structure_constants(LieBasis(plqs))
    basis = sc.basis
    n = plqs.n
    perp = nullspace([plqs.w])  # u with w(u) = 0, i.e. B(u, v_w) = 0
    k_vecs = [basis.coordinates(rot(plqs.form, u, v)) for u, v in itertools.combinations(perp, 2)]
    k_rank = rank(k_vecs)
    idx = derived_indices(basis)
    l_w = _centralizer(sc, k_vecs, idx)
    t = sl2_triple(plqs)
    triple = [basis.coordinates(x) for x in (t.e, t.h, t.f)]
    l_is = _same_span(l_w, triple)
    back = _centralizer(sc, l_w, idx)
    mutual = _same_span(back, k_vecs)
    expect = (n - 1) * (n - 2) // 2
    if k_rank != expect:
        raise VerificationFailure(f"dim k_w = {k_rank}, expected {expect}")
    return DualPair(k_vecs, l_w, k_rank, len(l_w), l_is, mutual)


# ---------------------------------------------------------------------------
# star structure and the Cayley-type map

_STAR_SIGN = {"Mult": 1, "Psi": 1, "One": 1, "Rot": -1, "H": -1}


def star(basis: LieBasis, d: WeylElement) -> WeylElement:
    """Antilinear anti-involution fixed on generators.

    ``tau(v)* = tau(v)``, ``Psi(tau(v))* = Psi(tau(v))``, ``1* = 1``,
    ``L* = -L``, ``h* = -h`` for real v; extended antilinearly.
    """
    coords = basis.coordinates(d)
    out = [c.conjugate() * _STAR_SIGN[b.tag] for c, b in zip(coords, basis.elements)]
    return basis.element(out)


def cayley(d: WeylElement) -> WeylElement:
    """Multiply the bigrade-(k, l) piece by ``i**l``."""
    out = WeylElement.zero(d.n)
    for (k, l), piece in bigrade(d):
        out = out + piece.scale(I ** (l % 4))
    return out


def star_and_cayley(basis: LieBasis, d: WeylElement) -> Tuple[WeylElement, WeylElement]:
    return star(basis, d), cayley(d)


def real_form_bases(basis: LieBasis) -> Tuple[List[WeylElement], List[WeylElement]]:
    """Bases of s*(R) = {i tau, L, h, i Psi} and s(R) = {tau, L, h, Psi}."""
    star_r, plain = [], []
    for b in basis.elements:
        if b.tag == "One":
            continue
        plain.append(b.element)
        star_r.append(b.element.scale(I) if b.tag in ("Mult", "Psi") else b.element)
    return star_r, plain


def tensor_of(basis: LieBasis, elems: Sequence[WeylElement]):
    """Structure constants of ``elems`` expressed in terms of themselves."""
    coords = [basis.coordinates(x) for x in elems]
    m = transpose(coords)  # columns = elements
    out = []
    for a, b in itertools.combinations(range(len(elems)), 2):
        c = basis.coordinates(commutator(elems[a], elems[b]))
        x = solve(m, c)
        if x is None:
            raise NotInSpan("bracket leaves the span of the given elements")
        out.append([as_qi(v) for v in x])
    return out


# ---------------------------------------------------------------------------
# Schroedinger family


def schrodinger_element(plqs: PLQS, kappa, lam) -> WeylElement:
    """``kappa - i (lam e + f) = kappa + lam w + Psi(w)``."""
    t = sl2_triple(plqs)
    lam, kappa = as_qi(lam), as_qi(kappa)
    return WeylElement.scalar(plqs.n, kappa) - (t.e.scale(lam) + t.f).scale(I)


# ---------------------------------------------------------------------------
# orthogonal group samples


def orthogonal_sample(form, rng: random.Random, size: int = 3) -> List[List[Fraction]]:
    """Rational g with ``g^T B g = B`` from a random antisymmetric K.

    ``S = B^{-1} K`` is B-antisymmetric and ``g = (I - S)(I + S)^{-1}``.
    """
    f = _form_of(form)
    n = f.n
    while True:
        k = [[Fraction(0)] * n for _ in range(n)]
        for i, j in itertools.combinations(range(n), 2):
            v = Fraction(rng.randint(-size, size), rng.randint(1, size))
            k[i][j], k[j][i] = v, -v
        s = matmul(f.inverse_matrix, k)
        eye = identity(n)
        plus = [[eye[i][j] + s[i][j] for j in range(n)] for i in range(n)]
        minus = [[eye[i][j] - s[i][j] for j in range(n)] for i in range(n)]
        try:
            g = matmul(minus, inverse(plus))
        except ZeroDivisionError:
            continue
        if matmul(matmul(transpose(g), f.matrix), g) != f.matrix:
            raise VerificationFailure("Cayley transform is not orthogonal")
        return g
