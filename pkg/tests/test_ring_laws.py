"""Ring laws on generated elements, hypothesis-style."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from gradval import scalars as sc
from gradval.algebra import GradedElement

from support import Q5, matrix_ring, quaternion_ring

RINGS = {
    "m2": matrix_ring(2, Q5),
    "quat": quaternion_ring(Q5),
}


@st.composite
def elements(draw, ring_key):
    ring = RINGS[ring_key]
    coeffs = {}
    for g in ring.groupoid.elements():
        num = draw(st.integers(min_value=-6, max_value=6))
        if num:
            level = draw(st.integers(min_value=-2, max_value=2))
            coeffs[g] = sc.mul(
                sc.scalar(ring.spec, Fraction(num, draw(st.integers(1, 6)))),
                sc.scalar_of_value(ring.spec, level),
            )
    return GradedElement(ring, coeffs)


@settings(max_examples=150, derandomize=True)
@given(st.sampled_from(sorted(RINGS)).flatmap(
    lambda k: st.tuples(elements(k), elements(k), elements(k))
))
def test_associativity_and_distributivity(xyz):
    x, y, z = xyz
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z
    assert (x + y) * z == x * z + y * z


@settings(max_examples=150, derandomize=True)
@given(st.tuples(elements("m2"), elements("m2")))
def test_valuation_submultiplicativity_on_components(xy):
    # every component of a product collects terms of value at least the sum
    # of the factor minima
    x, y = xy
    prod = x * y
    if x.is_zero() or y.is_zero() or prod.is_zero():
        return
    min_x = min(sc.valuate(c) for c in x.coeffs.values())
    min_y = min(sc.valuate(c) for c in y.coeffs.values())
    assert all(sc.valuate(c) >= min_x + min_y for c in prod.coeffs.values())
