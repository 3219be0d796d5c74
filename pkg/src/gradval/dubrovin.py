"""Dubrovin-style verification for full-support matrix patterns.

For a total stable pattern over a matrix-unit style groupoid that contains
every basis unit and keeps it out of the ideal of non-invertibles, the
quotient by that ideal is simple artinian and every outside element can be
pushed into R \\ M by one homogeneous multiplier on either side.  The witness
builder follows that construction literally and re-verifies membership.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Tuple

from .algebra import GradedElement, graded_inverse
from .errors import HypothesisViolation, InternalInvariantError
from .groupoids import is_connected
from .patterns import BoundPattern, is_valuation_ring, positives_ideal, residue_ring
from .valuation import CanonicalValuation


@dataclass(frozen=True)
class DubrovinReport:
    hypothesis_ok: bool
    residue_simple_artinian: bool
    detail: str


def check_hypothesis(pattern: BoundPattern) -> None:
    """Full support with all basis units inside and outside the radical."""
    gpd = pattern.ring.groupoid
    if not is_connected(gpd):
        raise HypothesisViolation("grading groupoid is disconnected")
    if not is_valuation_ring(pattern):
        raise HypothesisViolation("pattern is not total and stable")
    _, raw = positives_ideal(pattern)
    for g in gpd.elements():
        if not (pattern.bound(g) <= 0):
            raise HypothesisViolation(
                f"basis unit {gpd.names[g]} lies outside the pattern"
            )
    for g in gpd.elements():
        if not (raw[gpd.names[g]] >= 1):
            raise HypothesisViolation(
                f"basis unit {gpd.names[g]} falls into the radical"
            )


def dubrovin_report(pattern: BoundPattern) -> DubrovinReport:
    check_hypothesis(pattern)
    res = residue_ring(pattern)
    full = len(res.support_names) == len(pattern.ring.groupoid)
    simple = full and res.simple_artinian
    return DubrovinReport(
        hypothesis_ok=True,
        residue_simple_artinian=simple,
        detail=f"residue support {len(res.support_names)}/{len(pattern.ring.groupoid)}",
    )


def dubrovin_witness(
    pattern: BoundPattern,
    valuation: CanonicalValuation,
    x: GradedElement,
) -> Tuple[GradedElement, GradedElement]:
    """Multipliers (r, r') with r*x and x*r' in the pattern but not in the
    ideal of non-invertibles, for x outside the pattern."""
    if pattern.contains(x):
        raise HypothesisViolation("witness construction expects an outside element")
    if not valuation.omega.is_group():
        raise InternalInvariantError("witness construction needs a group-valued order")
    best: Optional[Tuple[int, str, int]] = None
    for g, c in sorted(x.coeffs.items(), key=lambda kv: pattern.ring.groupoid.names[kv[0]]):
        v = valuation.value(pattern.ring.unit(g, c))
        offset = valuation.offset_of(v)
        if offset is None:
            raise InternalInvariantError("component value has no integer coordinate")
        if best is None or offset < best[0]:
            best = (offset, pattern.ring.groupoid.names[g], g)
    assert best is not None
    g = best[2]
    multiplier = graded_inverse(x.component(g))
    ideal, _ = positives_ideal(pattern)
    for product in (x * multiplier, multiplier * x):
        if not pattern.contains(product) or ideal.contains(product):
            raise InternalInvariantError("witness product left R \\ M")
    return multiplier, multiplier
