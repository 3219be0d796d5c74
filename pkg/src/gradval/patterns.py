"""Homogeneous subrings and ideals as valuation-bound patterns.

A pattern assigns to every groupoid element g a bound b_g in Z u {-inf,+inf};
it describes the homogeneous subset { sum c_g u_g : w(c_g) >= b_g }.  All the
subring/ideal predicates of the package reduce to inequalities over bounds;
each closed form is kept honest by a literal window-scan oracle that tests
the defining property with actual graded arithmetic.

Under the trivial valuation the value set is {0}, so bounds collapse to
0 (whole component) or +inf (zero component); patterns are normalised to
that form at construction.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import scalars as sc
from .algebra import GradedElement, Twist, TwistedGroupoidRing, graded_inverse
from .bounds import (
    NEG_INF,
    POS_INF,
    Bound,
    bound_add,
    is_finite,
    render_bound,
)
from .errors import (
    GradvalError,
    InternalInvariantError,
    KindMismatch,
    LengthViolation,
    NotMember,
    NotStrong,
    NotTotal,
    ParentMismatch,
)
from .groupoids import connected_components, is_connected, Groupoid
from .scalars import IDENTITY, Scalar

SUBRING = "subring"
LEFT_IDEAL = "left_ideal"
RIGHT_IDEAL = "right_ideal"
TWO_SIDED_IDEAL = "two_sided_ideal"
KINDS = (SUBRING, LEFT_IDEAL, RIGHT_IDEAL, TWO_SIDED_IDEAL)

_FIXPOINT_ROUND_CAP = 10_000


class BoundPattern:
    """One valuation bound per groupoid element; immutable."""

    def __init__(self, ring: TwistedGroupoidRing, bounds: Dict, kind: str = SUBRING):
        if kind not in KINDS:
            raise KindMismatch(f"unknown pattern kind {kind!r}")
        self.ring = ring
        self.kind = kind
        gpd = ring.groupoid
        table: List[Bound] = [POS_INF] * len(gpd)
        seen = set()
        for key, raw in bounds.items():
            idx = gpd.index(key) if isinstance(key, str) else key
            table[idx] = raw
            seen.add(idx)
        if len(seen) != len(gpd):
            missing = [gpd.names[i] for i in gpd.elements() if i not in seen]
            raise GradvalError(f"pattern misses bounds for {missing}")
        if ring.spec.valuation == sc.TRIVIAL:
            table = [self._collapse_trivial(b) for b in table]
        self._bounds: Tuple[Bound, ...] = tuple(table)

    @staticmethod
    def _collapse_trivial(b: Bound) -> Bound:
        if b == POS_INF or (is_finite(b) and b >= 1):
            return POS_INF
        return 0

    def bound(self, g: int) -> Bound:
        return self._bounds[g]

    def bounds_by_name(self) -> Dict[str, Bound]:
        return {self.ring.groupoid.names[g]: self._bounds[g] for g in self.ring.groupoid.elements()}

    def with_kind(self, kind: str) -> "BoundPattern":
        return BoundPattern(self.ring, dict(enumerate(self._bounds)), kind)

    def contains(self, x: GradedElement) -> bool:
        if x.parent is not self.ring:
            x._require_same(self.ring.one())
        return all(sc.valuate(c) >= self._bounds[g] for g, c in x.coeffs.items())

    def alpha_value(self, f: int, g: int) -> int:
        return int(sc.valuate(self.ring.twist.a(f, g)))

    def __eq__(self, other) -> bool:
        if not isinstance(other, BoundPattern):
            return NotImplemented
        return (
            self._bounds == other._bounds
            and self.ring.groupoid.names == other.ring.groupoid.names
            and self.ring.spec == other.ring.spec
        )

    def __hash__(self):
        return hash(self._bounds)

    def __repr__(self) -> str:
        body = ", ".join(
            f"{nm}:{render_bound(b)}" for nm, b in self.bounds_by_name().items()
        )
        return f"BoundPattern[{self.kind}]({body})"

    def render(self) -> str:
        return ", ".join(
            f"{nm}={render_bound(b)}" for nm, b in sorted(self.bounds_by_name().items())
        )


@dataclass(frozen=True)
class PatternReport:
    ok: bool
    witnesses: Tuple[str, ...]


def validate_pattern(p: BoundPattern, ambient: Optional[BoundPattern] = None) -> PatternReport:
    """Closure (and, for ideals, containment) inequalities with witnesses."""
    gpd = p.ring.groupoid
    witnesses: List[str] = []
    if p.kind == SUBRING:
        for e in gpd.idempotents:
            if not (p.bound(e) <= 0):
                witnesses.append(f"unit bound: b[{gpd.names[e]}] > 0")
        for f, g in gpd.composable_pairs():
            fg = gpd.mult(f, g)
            lhs = bound_add(p.bound(f), p.bound(g), p.alpha_value(f, g))
            if lhs < p.bound(fg):
                witnesses.append(
                    f"closure: b[{gpd.names[f]}]+b[{gpd.names[g]}]+w(alpha)="
                    f"{render_bound(lhs)} < b[{gpd.names[fg]}]={render_bound(p.bound(fg))}"
                )
    else:
        if ambient is None:
            raise GradvalError("ideal validation needs its ambient subring")
        if ambient.kind != SUBRING:
            raise KindMismatch("ambient pattern must be a subring")
        for g in gpd.elements():
            if p.bound(g) < ambient.bound(g):
                witnesses.append(f"containment: i[{gpd.names[g]}] < b[{gpd.names[g]}]")
        left = p.kind in (LEFT_IDEAL, TWO_SIDED_IDEAL)
        right = p.kind in (RIGHT_IDEAL, TWO_SIDED_IDEAL)
        for f, g in gpd.composable_pairs():
            fg = gpd.mult(f, g)
            a = p.alpha_value(f, g)
            if left and bound_add(ambient.bound(f), p.bound(g), a) < p.bound(fg):
                witnesses.append(
                    f"left closure fails on ({gpd.names[f]},{gpd.names[g]})"
                )
            if right and bound_add(p.bound(f), ambient.bound(g), a) < p.bound(fg):
                witnesses.append(
                    f"right closure fails on ({gpd.names[f]},{gpd.names[g]})"
                )
    return PatternReport(not witnesses, tuple(witnesses))


# -- totality / stability ----------------------------------------------------


def _require_subring(p: BoundPattern) -> None:
    if p.kind != SUBRING:
        raise KindMismatch(f"operation requires a subring pattern, got {p.kind}")


def is_total(p: BoundPattern) -> bool:
    """Every nonzero homogeneous element or its graded inverse lies inside."""
    _require_subring(p)
    gpd = p.ring.groupoid
    trivial = p.ring.spec.valuation == sc.TRIVIAL
    for g in gpd.elements():
        b = p.bound(g)
        bi = p.bound(gpd.inv(g))
        a = p.alpha_value(g, gpd.inv(g))
        if trivial:
            if b == POS_INF and bi == POS_INF:
                return False
            continue
        if b == NEG_INF:
            continue
        if b == POS_INF:
            if bi != NEG_INF:
                return False
            continue
        if bi == NEG_INF:
            continue
        if bi == POS_INF:
            return False
        if b + bi + a > 1:
            return False
    return True


def is_stable(p: BoundPattern) -> bool:
    """Conjugation by any homogeneous element maps component t(h) onto s(h)."""
    _require_subring(p)
    gpd = p.ring.groupoid
    return all(
        p.bound(gpd.target(g)) == p.bound(gpd.source(g)) for g in gpd.elements()
    )


def is_valuation_ring(p: BoundPattern) -> bool:
    return is_total(p) and is_stable(p)


def value_window(ring: TwistedGroupoidRing, radius: int) -> List[int]:
    if ring.spec.valuation == sc.TRIVIAL:
        return [0]
    return list(range(-radius, radius + 1))


def level_unit(ring: TwistedGroupoidRing, g: int, m: int) -> GradedElement:
    return ring.unit(g, sc.scalar_of_value(ring.spec, m))


def oracle_is_total(p: BoundPattern, radius: int = 6) -> Tuple[bool, Optional[str]]:
    """Literal definition scanned over homogeneous pi^m u_g in the window."""
    _require_subring(p)
    ring = p.ring
    for g in ring.groupoid.elements():
        for m in value_window(ring, radius):
            h = level_unit(ring, g, m)
            inv = graded_inverse(h)
            if not (p.contains(h) or p.contains(inv)):
                return False, f"{ring.groupoid.names[g]} at level {m}"
    return True, None


def oracle_is_stable(p: BoundPattern, radius: int = 6) -> Tuple[bool, Optional[str]]:
    _require_subring(p)
    ring = p.ring
    gpd = ring.groupoid
    levels = value_window(ring, radius)
    for g in gpd.elements():
        s_e, t_e = gpd.source(g), gpd.target(g)
        for m in levels:
            h = level_unit(ring, g, m)
            hi = graded_inverse(h)
            for n in levels:
                x = level_unit(ring, t_e, n)
                if p.contains(x) and not p.contains(h * x * hi):
                    return False, f"conjugation by {gpd.names[g]}@{m} leaves the ring"
                y = level_unit(ring, s_e, n)
                if p.contains(y) and not p.contains(hi * y * h):
                    return False, f"conjugation into {gpd.names[g]}@{m} misses {gpd.names[t_e]}"
    return True, None


# -- ideal comparison ---------------------------------------------------------

EQUAL = "equal"
SUBSET = "subset"
SUPERSET = "superset"
INCOMPARABLE = "incomparable"


@dataclass(frozen=True)
class IdealComparison:
    relation: str
    witnesses: Tuple[str, ...]


def compare_ideals(
    i: BoundPattern, j: BoundPattern, parent: Optional[BoundPattern] = None
) -> IdealComparison:
    """Componentwise comparison (subset means i is contained in j)."""
    if i.ring.groupoid.names != j.ring.groupoid.names or i.ring.spec != j.ring.spec:
        raise ParentMismatch("ideals over different rings")
    gpd = i.ring.groupoid
    below = [g for g in gpd.elements() if i.bound(g) < j.bound(g)]
    above = [g for g in gpd.elements() if i.bound(g) > j.bound(g)]
    if parent is not None and is_total(parent):
        _assert_componentwise_order(i, j, parent)
    if not below and not above:
        return IdealComparison(EQUAL, ())
    if not below:
        return IdealComparison(
            SUBSET, tuple(f"i[{gpd.names[g]}] strictly inside" for g in above[:4])
        )
    if not above:
        return IdealComparison(
            SUPERSET, tuple(f"j[{gpd.names[g]}] strictly inside" for g in below[:4])
        )
    w = (
        f"component {gpd.names[above[0]]}: i smaller",
        f"component {gpd.names[below[0]]}: j smaller",
    )
    return IdealComparison(INCOMPARABLE, w)


def _assert_componentwise_order(i: BoundPattern, j: BoundPattern, parent: BoundPattern) -> None:
    """Over a total parent, a strict inclusion in one component forces the
    reverse inclusions across every component with the same unit."""
    gpd = i.ring.groupoid
    sided = []
    if i.kind in (LEFT_IDEAL, TWO_SIDED_IDEAL):
        sided.append(gpd.target)
    if i.kind in (RIGHT_IDEAL, TWO_SIDED_IDEAL):
        sided.append(gpd.source)
    for unit_of in sided:
        for g in gpd.elements():
            if j.bound(g) < i.bound(g):  # J_g not contained in I_g
                for g2 in gpd.elements():
                    if unit_of(g2) == unit_of(g) and i.bound(g2) < j.bound(g2):
                        raise InternalInvariantError(
                            "componentwise order violated at "
                            f"{gpd.names[g]} / {gpd.names[g2]}"
                        )


# -- generated ideals ----------------------------------------------------------


def _closure_fixpoint(
    p: BoundPattern, start: List[Bound], left: bool, right: bool
) -> List[Bound]:
    gpd = p.ring.groupoid
    vals = list(start)
    for _ in range(_FIXPOINT_ROUND_CAP):
        changed = False
        for f, g in gpd.composable_pairs():
            fg = gpd.mult(f, g)
            a = p.alpha_value(f, g)
            if left:
                cand = bound_add(p.bound(f), vals[g], a)
                if cand < vals[fg]:
                    vals[fg] = cand
                    changed = True
            if right:
                cand = bound_add(vals[f], p.bound(g), a)
                if cand < vals[fg]:
                    vals[fg] = cand
                    changed = True
        if not changed:
            for g in gpd.elements():
                if vals[g] < p.bound(g):
                    raise InternalInvariantError("ideal closure dipped below the ring")
            return vals
    raise InternalInvariantError("ideal closure did not stabilise")


def _ideal_kind(side: str) -> str:
    return {
        "left": LEFT_IDEAL,
        "right": RIGHT_IDEAL,
        "two_sided": TWO_SIDED_IDEAL,
    }[side]


def generated_ideal(
    p: BoundPattern, generators: Sequence[GradedElement], side: str = "two_sided"
) -> BoundPattern:
    """Smallest one- or two-sided homogeneous ideal of p containing the
    given homogeneous members."""
    _require_subring(p)
    kind = _ideal_kind(side)
    gpd = p.ring.groupoid
    start: List[Bound] = [POS_INF] * len(gpd)
    for gen in generators:
        if not gen.is_homogeneous() or gen.is_zero():
            raise GradvalError("generators must be nonzero homogeneous elements")
        if not p.contains(gen):
            raise NotMember(f"generator {gen!r} lies outside the pattern")
        (g, c), = gen.coeffs.items()
        start[g] = min(start[g], sc.valuate(c))
    vals = _closure_fixpoint(
        p, start, left=side in ("left", "two_sided"), right=side in ("right", "two_sided")
    )
    return BoundPattern(p.ring, dict(enumerate(vals)), kind)


def cyclic_generator(
    p: BoundPattern, ideal: BoundPattern, side: str = "two_sided", radius: int = 6
) -> Optional[GradedElement]:
    """Search pi^m u_g (names ascending, m ascending) for a single generator
    reproducing the ideal; None when the window search is exhausted."""
    _require_subring(p)
    ring = p.ring
    gpd = ring.groupoid
    order = sorted(gpd.elements(), key=lambda g: gpd.names[g])
    for g in order:
        for m in value_window(ring, radius):
            h = level_unit(ring, g, m)
            if not (p.contains(h) and ideal.contains(h)):
                continue
            if generated_ideal(p, [h], side) == ideal.with_kind(_ideal_kind(side)):
                return h
    return None


# -- the ideal of non-invertibles ---------------------------------------------


def _positive_start(p: BoundPattern) -> List[Bound]:
    gpd = p.ring.groupoid
    out: List[Bound] = []
    for g in gpd.elements():
        b = p.bound(g)
        bi = p.bound(gpd.inv(g))
        a = p.alpha_value(g, gpd.inv(g))
        if b == POS_INF:
            out.append(POS_INF)
            continue
        if bi == NEG_INF:
            threshold: Bound = POS_INF
        elif bi == POS_INF:
            threshold = NEG_INF
        else:
            threshold = 1 - bi - a
        out.append(max(b, threshold))
    return out


def positives_ideal(p: BoundPattern) -> Tuple[BoundPattern, Dict[str, Bound]]:
    """The two-sided ideal generated by the homogeneous members whose graded
    inverse leaves the ring, plus the raw generator levels per component."""
    _require_subring(p)
    if not is_total(p):
        raise NotTotal("positives require a total subring")
    vals = _closure_fixpoint(p, _positive_start(p), left=True, right=True)
    raw = {p.ring.groupoid.names[g]: vals[g] for g in p.ring.groupoid.elements()}
    return BoundPattern(p.ring, dict(enumerate(vals)), TWO_SIDED_IDEAL), raw


def oracle_noninvertible_levels(
    p: BoundPattern, g: int, radius: int = 6
) -> List[int]:
    """Window levels m for which pi^m u_g is a member whose inverse escapes."""
    ring = p.ring
    out = []
    for m in value_window(ring, radius):
        h = level_unit(ring, g, m)
        if p.contains(h) and not p.contains(graded_inverse(h)):
            out.append(m)
    return out


# -- residue ring ---------------------------------------------------------------


@dataclass
class ResidueRing:
    """The quotient by the ideal of non-invertibles, again a graded skewfield."""

    ring: TwistedGroupoidRing  # over the residue field, supported on `support`
    support_names: Tuple[str, ...]
    parent_pattern: BoundPattern
    simple_artinian: bool

    def reduce(self, x: GradedElement) -> GradedElement:
        """Image of a member of the subring in the residue ring."""
        p = self.parent_pattern
        if not p.contains(x):
            raise NotMember("element outside the subring has no residue")
        spec = p.ring.spec
        coeffs: Dict[int, Scalar] = {}
        for g, c in x.coeffs.items():
            name = p.ring.groupoid.names[g]
            if name not in self.support_names:
                continue
            shifted = sc.mul(c, sc.inverse(sc.scalar_of_value(spec, int(p.bound(g)))))
            r = sc.residue(shifted)
            if not r.is_zero():
                coeffs[self.ring.groupoid.index(name)] = r
        return GradedElement(self.ring, coeffs)


def residue_ring(p: BoundPattern) -> ResidueRing:
    _require_subring(p)
    if not is_total(p):
        raise NotTotal("residue construction requires a total subring")
    ring = p.ring
    gpd = ring.groupoid
    _, raw = positives_ideal(p)
    support: List[int] = []
    for g in gpd.elements():
        b = p.bound(g)
        pg = raw[gpd.names[g]]
        if is_finite(b) and is_finite(pg):
            if pg - b > 1:
                raise LengthViolation(
                    f"component {gpd.names[g]} has length {pg - b} > 1"
                )
            if pg == b + 1:
                support.append(g)
        elif b == NEG_INF and pg != NEG_INF:
            raise LengthViolation(
                f"component {gpd.names[g]} is a full coefficient line; its residue "
                "is not a module over the residue field"
            )
        elif is_finite(b) and pg == POS_INF:
            raise LengthViolation(
                f"component {gpd.names[g]} survives with infinite length"
            )
    for e in gpd.idempotents:
        if e not in support:
            raise InternalInvariantError("an idempotent unit fell into the ideal")

    index_map = {g: i for i, g in enumerate(support)}
    names = [gpd.names[g] for g in support]
    mult = {}
    for a, b in itertools.product(support, repeat=2):
        ab = gpd.mult(a, b)
        if ab is None:
            continue
        if ab not in index_map:
            raise InternalInvariantError("residue support is not closed under products")
        mult[(index_map[a], index_map[b])] = index_map[ab]
    inverse = []
    for g in support:
        if gpd.inv(g) not in index_map:
            raise InternalInvariantError("residue support is not closed under inverse")
        inverse.append(index_map[gpd.inv(g)])
    sub = Groupoid(names, mult, inverse)

    spec = ring.spec
    rspec = spec.residue_spec()
    alpha = {}
    for (a, b), prod_idx in mult.items():
        f, g = support[a], support[b]
        fg = support[prod_idx]
        n = int(p.bound(f)) + int(p.bound(g)) - int(p.bound(fg))
        val = sc.mul(ring.twist.a(f, g), sc.scalar_of_value(spec, n))
        r = sc.residue(val)
        if r.is_zero():
            raise InternalInvariantError("residue twist vanished; pattern not tight on support")
        alpha[(a, b)] = r
    sigma = {}
    for i, g in enumerate(support):
        auto = ring.twist.s(g)
        if spec.valuation == sc.PADIC and auto.kind != IDENTITY:
            raise InternalInvariantError("non-identity twist over a p-adic field")
        sigma[i] = auto
    quotient = TwistedGroupoidRing(rspec, sub, Twist(alpha, sigma))
    return ResidueRing(
        ring=quotient,
        support_names=tuple(names),
        parent_pattern=p,
        simple_artinian=is_connected(sub),
    )


# -- strong grading and component ideals ----------------------------------------


def is_strongly_graded_pattern(p: BoundPattern) -> bool:
    """Tight closure: component products fill the target component exactly."""
    _require_subring(p)
    gpd = p.ring.groupoid
    for f, g in gpd.composable_pairs():
        fg = gpd.mult(f, g)
        lhs = bound_add(p.bound(f), p.bound(g), p.alpha_value(f, g))
        if lhs != p.bound(fg):
            return False
    return True


def component_representatives(p: BoundPattern) -> Tuple[str, ...]:
    """One idempotent name per connected component (least name)."""
    gpd = p.ring.groupoid
    reps = []
    for cls in connected_components(gpd).classes:
        idem = sorted(nm for nm in cls if gpd.index(nm) in gpd.idempotents)
        reps.append(idem[0])
    return tuple(reps)


def extend_component_ideals(
    p: BoundPattern, component_bounds: Dict[str, Bound]
) -> BoundPattern:
    """Transport per-component ideals of the unit rings to a graded ideal."""
    _require_subring(p)
    if not is_strongly_graded_pattern(p):
        raise NotStrong("component-ideal transport needs a strongly graded pattern")
    gpd = p.ring.groupoid
    reps = component_representatives(p)
    if set(component_bounds) != set(reps):
        raise GradvalError(f"expected bounds exactly for representatives {reps}")
    start: List[Bound] = [POS_INF] * len(gpd)
    for nm, val in component_bounds.items():
        e = gpd.index(nm)
        if val < p.bound(e):
            raise NotMember(f"component ideal at {nm} is not inside the unit ring")
        start[e] = val
    vals = _closure_fixpoint(p, start, left=True, right=True)
    return BoundPattern(p.ring, dict(enumerate(vals)), TWO_SIDED_IDEAL)


def restrict_component_ideals(p: BoundPattern, ideal: BoundPattern) -> Dict[str, Bound]:
    return {nm: ideal.bound(p.ring.groupoid.index(nm)) for nm in component_representatives(p)}


def graded_jacobson_radical(p: BoundPattern) -> BoundPattern:
    """Extension of the unit-ring Jacobson radicals across the grading."""
    _require_subring(p)
    if not is_strongly_graded_pattern(p):
        raise NotStrong("the graded radical transport needs a strong pattern")
    gpd = p.ring.groupoid
    comp: Dict[str, Bound] = {}
    padic = p.ring.spec.valuation == sc.PADIC
    for nm in component_representatives(p):
        b = p.bound(gpd.index(nm))
        if padic and is_finite(b):
            comp[nm] = int(b) + 1
        else:
            comp[nm] = POS_INF  # the unit ring is a field there
    return extend_component_ideals(p, comp)
