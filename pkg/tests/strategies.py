"""Shared hypothesis strategies for Weyl algebra elements."""
from hypothesis import strategies as st

from tamecert.weyl import WeightVector, WeylElement

coeffs = st.fractions(min_value=-4, max_value=4, max_denominator=3).filter(lambda c: c != 0)


def exps(dim, deg=2):
    return st.tuples(*[st.integers(0, deg)] * dim)


def weyl(dim, base=0, deg=2, max_terms=4):
    return st.dictionaries(st.tuples(exps(dim, deg), exps(dim, deg)), coeffs, max_size=max_terms).map(
        lambda t: WeylElement(dim, t, base))


def weights(d):
    return st.lists(st.integers(1, 4), min_size=d, max_size=d).map(WeightVector)
