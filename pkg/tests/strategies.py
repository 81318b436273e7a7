"""Shared hypothesis strategies."""

from fractions import Fraction

from hypothesis import strategies as st

from conequant.scalar import QI
from conequant.weyl import WeylElement

small_fracs = st.fractions(min_value=-5, max_value=5, max_denominator=6)
qis = st.builds(QI, small_fracs, small_fracs)
nonzero_qis = qis.filter(bool)


def exps(n, top):
    return st.tuples(*[st.integers(0, top)] * n)


def weyl_elements(n=3, max_terms=4, top=2):
    keys = st.tuples(exps(n, top), exps(n, top))
    return st.dictionaries(keys, qis, max_size=max_terms).map(lambda t: WeylElement(n, t))


def polynomials(n=3, max_terms=4, top=3):
    from conequant.poly import Polynomial

    return st.dictionaries(exps(n, top), qis, max_size=max_terms).map(lambda t: Polynomial(n, t))
