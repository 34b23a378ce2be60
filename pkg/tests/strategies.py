"""Hypothesis strategies shared by the test modules."""
from fractions import Fraction

from hypothesis import strategies as st

from singcurv.ratpoly import Poly

small_fracs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


def polys(ring=("x", "y"), max_deg=4, max_terms=5):
    n = len(ring)
    exps = st.lists(st.integers(0, max_deg), min_size=n, max_size=n).filter(lambda e: sum(e) <= max_deg)
    terms = st.dictionaries(exps.map(tuple), small_fracs, max_size=max_terms)
    return terms.map(lambda t: Poly(ring, t))


def points(n):
    return st.tuples(*([small_fracs] * n))
