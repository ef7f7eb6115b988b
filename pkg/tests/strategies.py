"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from z3plane.algebra import Element, Presentation
from z3plane.scalar import CycloNum, Scalar

small_rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)
cyclonums = st.builds(CycloNum, small_rationals, small_rationals)
nonzero_cyclonums = cyclonums.filter(lambda c: not c.is_zero())
scalars = st.dictionaries(st.integers(-3, 3), cyclonums, max_size=3).map(Scalar)
monomial_scalars = st.builds(lambda c, k: Scalar.monomial(c, k), nonzero_cyclonums, st.integers(-4, 4))


def words(pres: Presentation, max_len: int = 4):
    return st.lists(st.sampled_from(pres.generators), max_size=max_len).map(tuple)


def elements(pres: Presentation, max_terms: int = 3, max_len: int = 4):
    return st.dictionaries(words(pres, max_len), scalars, max_size=max_terms).map(lambda d: Element(pres, d))
