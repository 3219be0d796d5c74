"""Conjugating a valuation-ring pattern by a ring unit.

q R q^{-1} is again a total stable ring, but for the conjugated grading whose
homogeneous elements are q h q^{-1}.  The transported object answers
membership by conjugating back and exposes the new grading explicitly so the
defining properties can be re-checked literally in it.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .algebra import GradedElement, graded_inverse, ring_inverse
from .errors import NotInvertible
from .patterns import BoundPattern, is_stable, is_total, value_window, level_unit


class ConjugatedRing:
    """Membership and grading data of q R q^{-1}."""

    def __init__(self, pattern: BoundPattern, q: GradedElement):
        self.pattern = pattern
        self.ring = pattern.ring
        q_inv = ring_inverse(q)
        if q_inv is None:
            raise NotInvertible("conjugation needs a ring-invertible element")
        self.q = q
        self.q_inv = q_inv

    def contains(self, y: GradedElement) -> bool:
        return self.pattern.contains(self.q_inv * y * self.q)

    def component_basis(self, g: int, level: int = 0) -> GradedElement:
        """The transported homogeneous element q (pi^level u_g) q^{-1}."""
        return self.q * level_unit(self.ring, g, level) * self.q_inv

    def decompose(self, y: GradedElement) -> Dict[int, GradedElement]:
        """Components of y in the conjugated grading."""
        x = self.q_inv * y * self.q
        return {
            g: self.q * x.component(g) * self.q_inv for g in x.support()
        }

    def graded_inverse_transported(self, y: GradedElement) -> Optional[GradedElement]:
        inv = graded_inverse(self.q_inv * y * self.q)
        return None if inv is None else self.q * inv * self.q_inv

    def is_total(self) -> bool:
        return is_total(self.pattern)

    def is_stable(self) -> bool:
        return is_stable(self.pattern)

    def oracle_is_total(self, radius: int = 4) -> Tuple[bool, Optional[str]]:
        """Totality tested literally in the conjugated grading."""
        gpd = self.ring.groupoid
        for g in gpd.elements():
            for m in value_window(self.ring, radius):
                h = self.component_basis(g, m)
                inv = self.graded_inverse_transported(h)
                if not (self.contains(h) or (inv is not None and self.contains(inv))):
                    return False, f"{gpd.names[g]} at level {m}"
        return True, None
