"""Shared builders for the test suite."""

from fractions import Fraction

from gradval import scalars as sc
from gradval.algebra import GradedElement, Twist, TwistedGroupoidRing
from gradval.bounds import NEG_INF, POS_INF
from gradval.groupoids import FiniteGroup, delta, group_groupoid, product_with_delta
from gradval.patterns import BoundPattern, validate_pattern
from gradval.scalars import IDENTITY, FieldAutomorphism, FieldSpec

Q = FieldSpec(sc.RAT)
Q5 = FieldSpec(sc.RAT, sc.PADIC, prime=5)
Q2 = FieldSpec(sc.RAT, sc.PADIC, prime=2)
QS2 = FieldSpec(sc.QUAD, quad=2)
F5 = FieldSpec(sc.PRIME, prime=5)

QUAT_NAMES = ["1", "i", "j", "k"]
QUAT_SIGNS = {
    ("1", "1"): 1, ("1", "i"): 1, ("1", "j"): 1, ("1", "k"): 1,
    ("i", "1"): 1, ("i", "i"): -1, ("i", "j"): 1, ("i", "k"): -1,
    ("j", "1"): 1, ("j", "i"): -1, ("j", "j"): -1, ("j", "k"): 1,
    ("k", "1"): 1, ("k", "i"): 1, ("k", "j"): -1, ("k", "k"): -1,
}


def quaternion_groupoid():
    return group_groupoid(FiniteGroup.klein_four(), names=QUAT_NAMES)


def quaternion_twist(spec, g, flip=None):
    alpha = {}
    for a, b in g.composable_pairs():
        sign = QUAT_SIGNS[(g.names[a], g.names[b])]
        if flip == (g.names[a], g.names[b]):
            sign = -sign
        alpha[(a, b)] = sc.scalar(spec, sign)
    sigma = {x: FieldAutomorphism(IDENTITY) for x in g.elements()}
    return Twist(alpha, sigma)


def quaternion_ring(spec=Q):
    g = quaternion_groupoid()
    return TwistedGroupoidRing(spec, g, quaternion_twist(spec, g))


def matrix_ring(n, spec=Q):
    return TwistedGroupoidRing(spec, delta(n))


def gvalex_pattern(spec=Q5):
    ring = matrix_ring(2, spec)
    return BoundPattern(
        ring, {"e11": 0, "e12": NEG_INF, "e21": POS_INF, "e22": 0}
    )


def full_pattern(ring, level=0):
    return BoundPattern(ring, {g: level for g in ring.groupoid.elements()})


def random_element(ring, rng, density=0.7, span=9):
    coeffs = {}
    for g in ring.groupoid.elements():
        if rng.random() < density:
            num = rng.randint(-span, span)
            den = rng.randint(1, span)
            if num:
                coeffs[g] = sc.scalar(ring.spec, Fraction(num, den))
    return GradedElement(ring, coeffs)


def random_subring_pattern(ring, rng):
    """A random valid subring pattern: draw bounds, then lower product bounds
    until the closure inequalities hold."""
    gpd = ring.groupoid
    trivial = ring.spec.valuation == sc.TRIVIAL
    bounds = {}
    for e in gpd.idempotents:
        bounds[e] = 0 if trivial else rng.choice([0, 0, 0, NEG_INF])
    finite = [-3, -2, -1, 0, 1, 2, 3]
    for g in gpd.elements():
        if g in bounds:
            continue
        bounds[g] = rng.choice(finite + [NEG_INF, POS_INF])
    if rng.random() < 0.5:
        # symmetric idempotent levels make stability more likely
        level = bounds[gpd.idempotents[0]]
        for e in gpd.idempotents:
            bounds[e] = level
    from gradval.bounds import bound_add

    # Lower product bounds until closure holds.  Finite negative cycles
    # descend forever; their true closure is -inf, so cut them over.
    passes = 0
    while True:
        passes += 1
        touched = set()
        for f, g in gpd.composable_pairs():
            fg = gpd.mult(f, g)
            a = int(sc.valuate(ring.twist.a(f, g)))
            lhs = bound_add(bounds[f], bounds[g], a)
            if lhs < bounds[fg]:
                bounds[fg] = lhs
                touched.add(fg)
        if not touched:
            break
        if passes > 60:
            for g in touched:
                bounds[g] = NEG_INF
    pattern = BoundPattern(ring, bounds)
    report = validate_pattern(pattern)
    assert report.ok, report.witnesses
    return pattern


def oracle_groupoid_rings():
    """The four grading groupoids used by the closed-form-vs-oracle checks."""
    return [
        ("delta2", matrix_ring(2, Q5)),
        ("delta3", matrix_ring(3, Q5)),
        ("z2_delta2", TwistedGroupoidRing(Q5, product_with_delta(FiniteGroup.cyclic(2), 2))),
        ("klein", TwistedGroupoidRing(Q5, group_groupoid(FiniteGroup.klein_four()))),
    ]
