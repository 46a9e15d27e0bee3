"""Shared strategies and helpers for the test suite."""

from __future__ import annotations

from fractions import Fraction

import hypothesis.strategies as st

from dercert import MultiPoly, UniPoly

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=4)
nonzero_rationals = rationals.filter(lambda q: q != 0)


def unipolys(max_degree: int = 6, max_terms: int = 5):
    return st.lists(
        st.tuples(st.integers(min_value=0, max_value=max_degree), rationals),
        max_size=max_terms,
    ).map(UniPoly)


def multipolys(variables=("x", "y"), max_degree: int = 4, max_terms: int = 5):
    nvars = len(variables)
    exponents = st.tuples(
        *[st.integers(min_value=0, max_value=max_degree) for _ in range(nvars)]
    ).filter(lambda e: sum(e) <= max_degree)
    return st.lists(st.tuples(exponents, rationals), max_size=max_terms).map(
        lambda terms: MultiPoly(tuple(variables), terms)
    )


def nonzero_multipolys(variables=("x", "y"), max_degree: int = 4, max_terms: int = 5):
    return multipolys(variables, max_degree, max_terms).filter(
        lambda p: not p.is_zero()
    )


def uni(src_coeffs) -> UniPoly:
    """Dense low-to-high coefficient list, for readable fixtures."""
    return UniPoly.from_list([Fraction(c) for c in src_coeffs])
