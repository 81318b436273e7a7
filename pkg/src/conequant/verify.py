"""The symbolic verification suite behind ``conequant verify``.

Each check produces a row ``{id, paper_anchor, status, detail}``; the anchor
is a short statement of the identity being checked.
"""

from __future__ import annotations

import random
import time
from fractions import Fraction
from typing import List, Optional

from .cone import (
    LieBasis,
    PLQS,
    cayley,
    check_bracket_table,
    dual_pair,
    jm_solutions,
    orthogonal_sample,
    phi_map,
    real_form_bases,
    schrodinger_element,
    sl2_triple,
    star,
    structure_constants,
    tensor_of,
    verify_phi_psi,
    verify_so_structure,
)
from .radial import (
    casimir_scalar,
    commutator as rcommutator,
    lower_cone_transform,
    physics_identity,
    power_solution_check,
    radial_generators,
    schrodinger_radial,
)
from .scalar import I
from .weyl import QuadraticForm, bigrade, commutator, cone_equal, preserves_ideal

__all__ = ["run_symbolic_suite", "filtered_bigrades", "form_suite", "plqs_suite", "radial_suite"]


def filtered_bigrades(d):
    """(filtration degree, weight) pairs: for each weight l, the top order k."""
    top = {}
    for (k, l), _ in bigrade(d):
        top[l] = max(k, top.get(l, k))
    return sorted((k, l) for l, k in top.items())


def _row(ident, anchor, ok, detail):
    return {"id": ident, "paper_anchor": anchor, "status": "PASS" if ok else "FAIL", "detail": detail}


def _skip(ident, anchor, detail):
    return {"id": ident, "paper_anchor": anchor, "status": "SKIP", "detail": detail}


def form_suite(form: QuadraticForm, seed: int = 0):
    """Checks that need only a nondegenerate form.  Returns (rows, sc)."""
    rows = []
    basis = LieBasis(form)
    n = form.n
    size = len(basis)
    rows.append(_row("spanning_set_size", "spanning set tau(V), L, h, 1, Psi(V)",
                     size == n * (n + 3) // 2 + 2, f"{size} elements"))
    q = form.polynomial()
    ok = all(preserves_ideal(b.element, q) for b in basis.elements)
    rows.append(_row("restrictable", "every generator preserves the ideal (Q)", ok,
                     f"{size}/{size} generators restrict" if ok else "a generator does not restrict"))
    # homogeneous in l; the order k is the top order (h and Psi carry lower-order tails)
    ok = all({kl[1] for kl, _ in bigrade(b.element)} == {b.grade[1]}
             and max(kl[0] for kl, _ in bigrade(b.element)) == b.grade[0] for b in basis.elements)
    rows.append(_row("bigrades", "generator weights l = 1, 0, 0, -1 with top orders 0, 1, 0, 2", ok, ""))

    for i, (name, good) in enumerate(check_bracket_table(basis)):
        rows.append(_row(f"bracket_{i + 1}", name, good, "exact, modulo I.D(V)"))

    sc = structure_constants(basis)
    rows.extend(verify_so_structure(sc))
    ok = verify_phi_psi(form, samples=10, seed=seed)
    rows.append(_row("phi_psi", "Phi(Psi(w)) = (2 - n) w", ok, f"(2 - n) = {2 - n} on basis and 10 random covectors"))

    rng = random.Random(seed)
    ok = True
    for _ in range(3):
        g = orthogonal_sample(form, rng)
        for b in basis.elements:
            if phi_map(form, b.element.transform(g)) != phi_map(form, b.element).transform(g):
                ok = False
                break
    rows.append(_row("phi_equivariance", "Phi is O(Q)-equivariant", ok, "3 rational orthogonal samples"))
    return rows, sc


def plqs_suite(plqs: PLQS, sc, seed: int = 0):
    """Checks tied to the distinguished covector w."""
    rows = []
    basis = sc.basis
    q = basis.q
    t = sl2_triple(plqs)
    for name, good in t.relations(q).items():
        rows.append(_row(f"sl2 {name}", "e = i w, h, f = i Psi(w) form an sl2-triple", good, "cone equality"))
    sol, ker = jm_solutions(sc, t.e, t.h)
    ok = sol is not None and not ker and sol == basis.coordinates(t.f)
    rows.append(_row("jm_unique", "a unique f with [h,f] = -2f, [e,f] = h", ok,
                     f"solution space dimension {len(ker) if sol is not None else 'empty'}; equals f: {ok}"))

    dp = dual_pair(plqs, sc)
    n = plqs.n
    rows.append(_row("dual_pair_k", "k_w = rotations fixing v_w, so(n-1)", dp.k_dim == (n - 1) * (n - 2) // 2,
                     f"dim k_w = {dp.k_dim}"))
    rows.append(_row("dual_pair_l", "the centralizer of k_w is span{e, h, f}", dp.l_dim == 3 and dp.l_is_sl2,
                     f"dim l_w = {dp.l_dim}"))
    rows.append(_row("dual_pair_mutual", "k_w and l_w are mutual centralizers", dp.mutual, ""))

    # star structure
    elems = [b.element for b in basis.elements]
    ok = all(star(basis, star(basis, x)) == x for x in elems)
    rows.append(_row("star_involution", "d -> d* is an involution", ok, ""))
    rng = random.Random(seed)
    ok = True
    for _ in range(12):
        a, b = rng.sample(elems, 2)
        a = a.scale(rng.choice([1, I, Fraction(1, 2) + I]))
        lhs = star(basis, commutator(a, b))
        rhs = commutator(star(basis, b), star(basis, a))
        ok = ok and cone_equal(lhs, rhs, q)
    rows.append(_row("star_antihom", "[a, b]* = [b*, a*]", ok, "12 sampled pairs"))
    star_r, _ = real_form_bases(basis)
    ok = all(cone_equal(star(basis, x).scale(-1), x, q) for x in star_r)
    rows.append(_row("star_real_form", "s*(R) = {d : d* = -d} contains i tau, L, h, i Psi", ok, ""))
    images = [cayley(x) for x in star_r]
    real = all(all(c.is_real() for c in basis.coordinates(x)) for x in images)
    rows.append(_row("cayley_real", "F maps s*(R) into s(R)", real, "F multiplies bigrade-l pieces by i^l"))
    ok = tensor_of(basis, images) == tensor_of(basis, star_r)
    rows.append(_row("cayley_iso", "F is a Lie algebra isomorphism s*(R) -> s(R)", ok, "structure constants agree"))

    s_el = schrodinger_element(plqs, 1, Fraction(1, 3))
    grades = filtered_bigrades(s_el)
    rows.append(_row("schrodinger_grades", "S = kappa + lam w + Psi(w) has bigrades (0,0), (0,1), (2,-1)",
                     grades == [(0, 0), (0, 1), (2, -1)], str(grades)))
    rows.append(_row("schrodinger_selfadjoint", "S* = S for real kappa, lam", star(basis, s_el) == s_el, ""))
    return rows


def radial_suite(ell_max: int = 10):
    rows = []
    ok = all(physics_identity(ell=l) for l in range(ell_max + 1))
    rows.append(_row("physics_identity", "radial S = r(Delta + kappa/r + lam)", ok,
                     f"l = 0..{ell_max}, symbolic kappa, lambda"))
    perturbed = schrodinger_radial(0) + schrodinger_radial(0).__class__({1: 1})
    rows.append(_row("physics_negative_control", "a perturbed operator is rejected",
                     not physics_identity(ell=0, op=perturbed), "d-coefficient set to 3"))
    cas = {l: casimir_scalar(l) for l in range(ell_max + 1)}
    ok = all(cas[l].constant() == 2 * l * (l + 1) for l in cas)
    rows.append(_row("casimir", "h^2/2 + ef + fe = 2 l(l+1)", ok,
                     ", ".join(f"l={l}: {cas[l].constant()}" for l in (0, 1, 3))))
    ok = True
    for l in range(ell_max + 1):
        g = radial_generators(l)
        ok = ok and rcommutator(g["e"], g["f"]) == g["h"]
        ok = ok and rcommutator(g["h"], g["e"]) == g["e"].scale(2)
        ok = ok and rcommutator(g["h"], g["f"]) == g["f"].scale(-2)
    rows.append(_row("radial_hom", "the radial images satisfy the sl2 relations", ok, f"l = 0..{ell_max}"))
    ok = all(
        lower_cone_transform(schrodinger_radial(l, kappa=k, lam=lm)) == schrodinger_radial(l, kappa=-k, lam=lm)
        for l in range(4) for k in (1, Fraction(3, 2)) for lm in (0, Fraction(-1, 4), Fraction(2, 7))
    )
    ok = ok and all(lower_cone_transform(lower_cone_transform(schrodinger_radial(l))) == schrodinger_radial(l)
                    for l in range(ell_max + 1))
    rows.append(_row("lower_cone", "t -> -t maps S(kappa, lam) to S(-kappa, lam); involution", ok, ""))
    ok = power_solution_check(Fraction(1, 2)) and power_solution_check(3) and not power_solution_check(3, mu=-1)
    rows.append(_row("power_solution", "(1 + 2i nu + 2i nu t d) t^(-1 + i/(2 nu)) = 0", ok, "nu = 1/2, 3; mu = -1 rejected"))
    return rows


def run_symbolic_suite(form: Optional[QuadraticForm] = None, w=None, dim: int = 4, seed: int = 0,
                       radial: bool = True) -> List[dict]:
    """Full symbolic suite; PLQS checks are skipped if no valid w is available."""
    start = time.perf_counter()
    form = form or QuadraticForm.standard(dim)
    rows, sc = form_suite(form, seed)
    plqs = None
    reason = ""
    try:
        if w is None and form.matrix == QuadraticForm.standard(form.n).matrix:
            w = [0] * (form.n - 1) + [1]
        if w is None:
            reason = "no distinguished covector given"
        else:
            plqs = PLQS(form.matrix, w)
    except ValueError as exc:
        reason = str(exc)
    if plqs is not None:
        rows.extend(plqs_suite(plqs, sc, seed))
    else:
        rows.append(_skip("plqs", "pointed Lorentzian space required", reason))
    if radial:
        rows.extend(radial_suite())
    rows.append({"id": "runtime", "paper_anchor": "", "status": "INFO",
                 "detail": f"{time.perf_counter() - start:.1f} s"})
    return rows
