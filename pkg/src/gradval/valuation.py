"""Value functions on a graded skewfield.

A value is a finite antichain of comparison coordinates (unit classes for the
canonical construction, (element, level) pairs for order-based valuations);
the empty antichain is the value of zero and compares above everything.
``a >= b`` holds when every coordinate of a dominates some coordinate of b;
this is the aggregation that keeps the ultrametric axiom stable under
cancellation, and it agrees with the coordinatewise order wherever both make
sense (single classes, totally ordered supports).
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from . import scalars as sc
from .algebra import GradedElement, TwistedGroupoidRing, graded_inverse, source_target
from .bounds import NEG_INF, POS_INF, Bound
from .errors import GradvalError, InternalInvariantError
from .groupoids import GroupoidOrder
from .omega import OmegaClass, ValueGroupoid
from .patterns import (
    BoundPattern,
    SUBRING,
    validate_pattern,
    value_window,
    level_unit,
)


class Value:
    """Antichain of coordinates; empty means infinity (the value of zero)."""

    __slots__ = ("system", "coords")

    def __init__(self, system, coords: Sequence):
        self.system = system
        self.coords = tuple(sorted(self._minimal(system, coords), key=system.sort_key))

    @staticmethod
    def _minimal(system, coords):
        unique = []
        for c in coords:
            if c not in unique:
                unique.append(c)
        keep = []
        for c in unique:
            if any(
                d != c and system.geq(c, d) and not system.geq(d, c) for d in unique
            ):
                continue
            keep.append(c)
        return keep

    def is_infinite(self) -> bool:
        return not self.coords

    def geq(self, other: "Value") -> bool:
        return all(
            any(self.system.geq(a, b) for b in other.coords) for a in self.coords
        )

    def leq(self, other: "Value") -> bool:
        return other.geq(self)

    def gt(self, other: "Value") -> bool:
        return self.geq(other) and self != other

    def comparable(self, other: "Value") -> bool:
        return self.geq(other) or other.geq(self)

    def mul(self, other: "Value") -> Optional["Value"]:
        """Product, defined for infinities and single-coordinate values."""
        if self.is_infinite() or other.is_infinite():
            return Value(self.system, [])
        if len(self.coords) != 1 or len(other.coords) != 1:
            return None
        prod = self.system.mul(self.coords[0], other.coords[0])
        if prod is None:
            return None
        return Value(self.system, [prod])

    def __eq__(self, other):
        if not isinstance(other, Value):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self):
        return hash(self.coords)

    def render(self) -> str:
        if self.is_infinite():
            return "inf"
        return " + ".join(self.system.render(c) for c in self.coords)

    def __repr__(self):
        return f"<value {self.render()}>"


@dataclass(frozen=True)
class AxiomCheck:
    name: str
    ok: bool
    detail: str
    witness: str = ""


def _recover_pattern(val, unit_of) -> BoundPattern:
    """Ring of homogeneous h with v(h) >= v(1 at unit_of(g)), as bounds."""
    ring = val.ring
    gpd = ring.groupoid
    bounds: Dict[int, Bound] = {}
    for g in gpd.elements():
        bounds[g] = val.level_threshold(g, unit_of(g))
    pattern = BoundPattern(ring, bounds, SUBRING)
    report = validate_pattern(pattern)
    if not report.ok:
        raise InternalInvariantError(
            "recovered bounds do not close under products: " + "; ".join(report.witnesses)
        )
    return pattern


class CanonicalValuation:
    """The valuation attached to a total stable pattern via its unit classes."""

    def __init__(self, pattern: BoundPattern):
        self.omega = ValueGroupoid(pattern)
        self.pattern = pattern
        self.ring = pattern.ring

    def system(self):
        return self.omega

    def value(self, x: GradedElement) -> Value:
        coords = [
            self.omega.canon(g, int(sc.valuate(c))) for g, c in x.coeffs.items()
        ]
        return Value(self.omega, coords)

    def level_threshold(self, g: int, unit: int) -> Bound:
        """Least level m with value(pi^m u_g) >= value(u_unit)."""
        ms = self.omega.minshift(unit, g)
        root_g = self.omega.canon(g, 0)
        root_u = self.omega.canon(unit, 0)
        if root_g.collapsed or root_u.collapsed:
            return NEG_INF if ms != POS_INF else POS_INF
        if ms == NEG_INF:
            return NEG_INF
        if ms == POS_INF:
            return POS_INF
        # value(pi^m u_g) >= value(u_unit) iff m - 0 >= minshift(unit -> g)
        return int(ms)

    def ring_from_targets(self) -> BoundPattern:
        return _recover_pattern(self, self.ring.groupoid.target)

    def ring_from_sources(self) -> BoundPattern:
        return _recover_pattern(self, self.ring.groupoid.source)

    def offset_of(self, v: Value) -> Optional[int]:
        """The integer coordinate when the value structure is a group."""
        if v.is_infinite() or len(v.coords) != 1 or v.coords[0].collapsed:
            return None
        return v.coords[0].offset


class OrderValuation:
    """Valuation from a compatible order on the grading groupoid: coordinates
    are (element, level) pairs, ordered across components by the given order."""

    def __init__(self, ring: TwistedGroupoidRing, order: GroupoidOrder):
        if order.base is not ring.groupoid:
            raise GradvalError("order is defined on a different groupoid")
        self.ring = ring
        self.order = order
        self._alpha_val = {
            (f, g): int(sc.valuate(ring.twist.a(f, g)))
            for f, g in ring.groupoid.composable_pairs()
        }

    # coordinate system protocol
    def geq(self, a, b) -> bool:
        (ga, ma), (gb, mb) = a, b
        if ga == gb:
            return ma >= mb
        return self.order.lt(gb, ga)

    def mul(self, a, b):
        (ga, ma), (gb, mb) = a, b
        prod = self.ring.groupoid.mult(ga, gb)
        if prod is None:
            return None
        return (prod, ma + mb + self._alpha_val[(ga, gb)])

    def sort_key(self, c):
        return (self.ring.groupoid.names[c[0]], c[1])

    def render(self, c) -> str:
        return f"({self.ring.groupoid.names[c[0]]}, {c[1]})"

    def system(self):
        return self

    def value(self, x: GradedElement) -> Value:
        coords = [(g, int(sc.valuate(c))) for g, c in x.coeffs.items()]
        return Value(self, coords)

    def level_threshold(self, g: int, unit: int) -> Bound:
        if g == unit:
            return 0
        if self.order.lt(unit, g):
            return NEG_INF
        return POS_INF

    def ring_from_targets(self) -> BoundPattern:
        return _recover_pattern(self, self.ring.groupoid.target)

    def ring_from_sources(self) -> BoundPattern:
        return _recover_pattern(self, self.ring.groupoid.source)


class RelabeledValuation:
    """The same valuation with every integer offset rescaled; order-isomorphic
    relabeling of the value structure."""

    def __init__(self, base: CanonicalValuation, factor: int = 2):
        if factor <= 0:
            raise GradvalError("rescaling factor must be positive")
        self.base = base
        self.factor = factor
        self.ring = base.ring

    def geq(self, a, b) -> bool:
        return self.base.omega.geq(self._unscale(a), self._unscale(b))

    def mul(self, a, b):
        prod = self.base.omega.mul(self._unscale(a), self._unscale(b))
        return None if prod is None else self._scale(prod)

    def sort_key(self, c):
        return self.base.omega.sort_key(c)

    def render(self, c) -> str:
        return c.render()

    def _scale(self, c: OmegaClass) -> OmegaClass:
        return OmegaClass(c.root, c.offset * self.factor, c.collapsed)

    def _unscale(self, c: OmegaClass) -> OmegaClass:
        if c.offset % self.factor:
            raise GradvalError("coordinate not in the rescaled image")
        return OmegaClass(c.root, c.offset // self.factor, c.collapsed)

    def system(self):
        return self

    def value(self, x: GradedElement) -> Value:
        base_value = self.base.value(x)
        return Value(self, [self._scale(c) for c in base_value.coords])

    def level_threshold(self, g: int, unit: int) -> Bound:
        return self.base.level_threshold(g, unit)

    def ring_from_targets(self) -> BoundPattern:
        return self.base.ring_from_targets()

    def ring_from_sources(self) -> BoundPattern:
        return self.base.ring_from_sources()


# -- axiom verification -------------------------------------------------------


def random_ring_element(
    ring: TwistedGroupoidRing, rng: random.Random, density: float = 0.6, span: int = 7,
    level_span: int = 2,
) -> GradedElement:
    coeffs = {}
    for g in ring.groupoid.elements():
        if rng.random() < density:
            num = rng.randint(-span, span)
            if not num:
                continue
            c = sc.scalar(ring.spec, Fraction(num, rng.randint(1, span)))
            if ring.spec.valuation == sc.PADIC:
                c = sc.mul(c, sc.scalar_of_value(ring.spec, rng.randint(-level_span, level_span)))
            coeffs[g] = c
    return GradedElement(ring, coeffs)


def check_axioms(
    val,
    seed: int = 0,
    radius: int = 6,
    n_triples: int = 1000,
    extra_triples: Sequence[Tuple[GradedElement, GradedElement, GradedElement]] = (),
) -> List[AxiomCheck]:
    """Verify the valuation axioms on window pairs and sampled triples.

    (1) only zero maps to infinity; (2) the value of a sum dominates any
    common lower bound of the summands; (3) multiplicativity on composable
    homogeneous pairs; (4) the target and source unit comparisons agree
    (canonicity).
    """
    ring = val.ring
    gpd = ring.groupoid
    rng = random.Random(seed)
    checks: List[AxiomCheck] = []

    inf_ok = val.value(ring.zero()).is_infinite()
    nonzero_ok = True
    witness = ""
    for _ in range(50):
        x = random_ring_element(ring, rng)
        if x.is_zero():
            continue
        if val.value(x).is_infinite():
            nonzero_ok = False
            witness = f"x = {x!r}"
            break
    checks.append(
        AxiomCheck("infinity-only-at-zero", inf_ok and nonzero_ok, "50 samples", witness)
    )

    ok = True
    witness = ""
    tried = 0
    triples = list(extra_triples)
    while len(triples) < n_triples:
        x = random_ring_element(ring, rng)
        y = random_ring_element(ring, rng)
        z = rng.choice(
            [x, y, x + y, random_ring_element(ring, rng)]
        )
        triples.append((x, y, z))
    for x, y, z in triples:
        vx, vy, vz = val.value(x), val.value(y), val.value(z)
        if not (vx.geq(vz) and vy.geq(vz)):
            continue
        tried += 1
        if not val.value(x + y).geq(vz):
            ok = False
            witness = f"x={x!r} y={y!r} z={z!r}"
            break
    checks.append(
        AxiomCheck("sum-dominates-common-bound", ok, f"{tried} qualifying triples", witness)
    )

    ok = True
    witness = ""
    pairs = 0
    levels = value_window(ring, radius)
    for g, h in gpd.composable_pairs():
        for m, n in itertools.product(levels, repeat=2):
            a = level_unit(ring, g, m)
            b = level_unit(ring, h, n)
            pairs += 1
            lhs = val.value(a * b)
            rhs = val.value(a).mul(val.value(b))
            if rhs is None or lhs != rhs:
                ok = False
                witness = f"{gpd.names[g]}@{m} * {gpd.names[h]}@{n}"
                break
        if not ok:
            break
    checks.append(
        AxiomCheck("homogeneous-multiplicativity", ok, f"{pairs} window pairs", witness)
    )

    ok = True
    witness = ""
    count = 0
    samples: List[GradedElement] = [
        level_unit(ring, g, m) for g in gpd.elements() for m in levels
    ]
    samples += [random_ring_element(ring, rng) for _ in range(200)]
    for x in samples:
        if x.is_zero():
            continue
        count += 1
        s, t = source_target(x)
        vx = val.value(x)
        if vx.geq(val.value(t)) != vx.geq(val.value(s)):
            ok = False
            witness = f"x = {x!r}"
            break
    checks.append(AxiomCheck("canonical-two-sided", ok, f"{count} elements", witness))
    return checks


def positives_agree(val, pattern: BoundPattern, radius: int = 6) -> Tuple[bool, str]:
    """Members whose graded inverse escapes == members with value strictly
    above their target unit; scanned over the homogeneous window."""
    ring = val.ring
    gpd = ring.groupoid
    for g in gpd.elements():
        unit_val = val.value(ring.unit(gpd.target(g)))
        for m in value_window(ring, radius):
            h = level_unit(ring, g, m)
            if not pattern.contains(h):
                continue
            escapes = not pattern.contains(graded_inverse(h))
            above = val.value(h).gt(unit_val)
            if escapes != above:
                return False, f"{gpd.names[g]} at level {m}"
    return True, ""


# -- equivalence ----------------------------------------------------------------


@dataclass(frozen=True)
class EquivalenceReport:
    equivalent: bool
    detail: str
    map_consistent: bool = True


def equivalent(v, w, radius: int = 4) -> EquivalenceReport:
    """Valuations agree up to order isomorphism iff they recover the same
    target ring; when they do, spot-check the induced coordinate map."""
    tv, tw = v.ring_from_targets(), w.ring_from_targets()
    if tv != tw:
        return EquivalenceReport(False, "target rings differ")
    ring = v.ring
    assignments: Dict = {}
    consistent = True
    samples = [
        level_unit(ring, g, m)
        for g in ring.groupoid.elements()
        for m in value_window(ring, radius)
    ]
    for h in samples:
        key = v.value(h)
        img = w.value(h)
        if key in assignments and assignments[key] != img:
            consistent = False
            break
        assignments[key] = img
    if consistent:
        keys = list(assignments)
        for a, b in itertools.islice(itertools.combinations(keys, 2), 500):
            if a.geq(b) != assignments[a].geq(assignments[b]):
                consistent = False
                break
        if consistent:
            for a, b in itertools.islice(itertools.product(keys, repeat=2), 500):
                pa = a.mul(b)
                pb = assignments[a].mul(assignments[b])
                if (pa is None) != (pb is None):
                    consistent = False
                    break
                if pa is not None and pa in assignments and assignments[pa] != pb:
                    consistent = False
                    break
    return EquivalenceReport(True, "target rings equal", consistent)


# -- fault injection --------------------------------------------------------------


class DroppedComparability:
    """Coordinate system with one >=-relation removed; used to show the axiom
    suite notices a broken order."""

    def __init__(self, system, upper, lower):
        self.base = system
        self.forbidden = (upper, lower)

    def geq(self, a, b) -> bool:
        if (a, b) == self.forbidden:
            return False
        return self.base.geq(a, b)

    def mul(self, a, b):
        return self.base.mul(a, b)

    def sort_key(self, c):
        return self.base.sort_key(c)

    def render(self, c):
        return self.base.render(c)


class MutatedValuation:
    """A canonical valuation whose order lost one comparability."""

    def __init__(self, base: CanonicalValuation, upper: OmegaClass, lower: OmegaClass):
        self.base = base
        self.ring = base.ring
        self._system = DroppedComparability(base.omega, upper, lower)

    def system(self):
        return self._system

    def value(self, x: GradedElement) -> Value:
        return Value(self._system, list(self.base.value(x).coords))
