"""Shared rings and hypothesis strategies for the test-suite."""
from hypothesis import strategies as st

from app.algebra.core import AlgebraElement, CoefficientRing, compositions, compositions_up_to

Z = CoefficientRing.integers()
Q = CoefficientRing.rationals()
F2 = CoefficientRing.prime_field(2)
F3 = CoefficientRing.prime_field(3)
F7 = CoefficientRing.prime_field(7)

small_ints = st.integers(min_value=-3, max_value=3)


def elements(ring: CoefficientRing = Z, max_degree: int = 4, max_terms: int = 4):
    """Random sparse elements on compositions of degree <= max_degree."""
    keys = st.sampled_from(compositions_up_to(max_degree))
    return st.dictionaries(keys, small_ints, max_size=max_terms).map(lambda d: AlgebraElement(ring, d))


def homogeneous_elements(degree: int, ring: CoefficientRing = Z, max_terms: int = 3):
    keys = st.sampled_from(compositions(degree))
    return st.dictionaries(keys, small_ints, max_size=max_terms).map(lambda d: AlgebraElement(ring, d))


def elem(ring: CoefficientRing, terms) -> AlgebraElement:
    return AlgebraElement.from_compositions(ring, terms)
