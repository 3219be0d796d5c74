"""The value groupoid of a valuation-ring pattern.

Homogeneous nonzero elements of the ambient ring form a groupoid under
multiplication; the two-sided orbits of the pattern's graded units partition
them into classes (g, offset) computed by a weighted union-find.  The order
between classes is decided by the least level shift achievable when passing
an element through ring members on both sides (``minshift``); cofinality of
those shifts also yields the support partition used to aggregate values.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import gcd
from typing import Dict, List, Optional, Tuple

from . import scalars as sc
from .bounds import NEG_INF, POS_INF, Bound, bound_add, is_finite
from .errors import InternalInvariantError, NotGValuationRing
from .patterns import BoundPattern, is_valuation_ring


@dataclass(frozen=True)
class OmegaClass:
    """Canonical form of a homogeneous-unit class: orbit root plus offset.

    ``collapsed`` marks orbits whose offsets are identified by units of
    unbounded level (whole coefficient lines inside the pattern).
    """

    root: str
    offset: int
    collapsed: bool = False

    def render(self) -> str:
        if self.collapsed:
            return f"({self.root}, *)"
        return f"({self.root}, {self.offset})"


class _WeightedUnionFind:
    """Union-find with integer potentials; conflicting cycle weights collapse
    the root's offset group (gcd bookkeeping)."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.pot = [0] * n  # canonical level of (g, m) is m + potential(g)
        self.modulus = [0] * n

    def phi(self, x: int) -> int:
        total = 0
        while self.parent[x] != x:
            total += self.pot[x]
            x = self.parent[x]
        return total

    def root(self, x: int) -> int:
        while self.parent[x] != x:
            x = self.parent[x]
        return x

    def union(self, a: int, b: int, w: int) -> None:
        """Record class(a, m) == class(b, m + w)."""
        ra, rb = self.root(a), self.root(b)
        pa, pb = self.phi(a), self.phi(b)
        if ra != rb:
            self.parent[rb] = ra
            self.pot[rb] = pa - w - pb
            self.modulus[ra] = gcd(self.modulus[ra], self.modulus[rb])
        else:
            d = pa - (w + pb)
            if d:
                self.modulus[ra] = gcd(self.modulus[ra], abs(d))

    def reroot(self, names) -> None:
        """Flatten and re-root every class at its least-named member."""
        groups: Dict[int, List[int]] = {}
        phis = {}
        for x in range(len(self.parent)):
            groups.setdefault(self.root(x), []).append(x)
            phis[x] = self.phi(x)
        for old_root, members in groups.items():
            new_root = min(members, key=lambda m: names[m])
            base = phis[new_root]
            modulus = self.modulus[old_root]
            for m in members:
                self.parent[m] = new_root
                self.pot[m] = phis[m] - base
            self.parent[new_root] = new_root
            self.pot[new_root] = 0
            self.modulus[new_root] = modulus


class ValueGroupoid:
    """Canonical forms, order, and partial product for unit classes."""

    def __init__(self, pattern: BoundPattern):
        if pattern.kind != "subring" or not is_valuation_ring(pattern):
            raise NotGValuationRing(
                "the value machinery needs a total and stable subring pattern"
            )
        self.pattern = pattern
        self.ring = pattern.ring
        gpd = self.ring.groupoid
        self._alpha_val = {
            (f, g): int(sc.valuate(self.ring.twist.a(f, g)))
            for f, g in gpd.composable_pairs()
        }
        self._unit_levels = self._compute_unit_levels()
        self._uf = self._build_orbits()
        self._rebase = self._compute_rebase()
        self._minshift = self._compute_minshift()
        self._check_structure()
        self._gbar, self._gbar_of = self._build_gbar()

    # -- construction pieces ------------------------------------------------

    def _compute_unit_levels(self) -> Dict[int, Optional[int]]:
        """Per component: the unique level of graded units inside the pattern
        (None = every level; absent = no units)."""
        gpd = self.ring.groupoid
        p = self.pattern
        out: Dict[int, Optional[int]] = {}
        for g in gpd.elements():
            b, bi = p.bound(g), p.bound(gpd.inv(g))
            a = self._alpha_val[(g, gpd.inv(g))]
            if is_finite(b) and is_finite(bi) and b + bi + a == 0:
                out[g] = int(b)
            elif b == NEG_INF and bi == NEG_INF:
                out[g] = None
        return out

    def _build_orbits(self) -> _WeightedUnionFind:
        gpd = self.ring.groupoid
        uf = _WeightedUnionFind(len(gpd))
        for u, level in self._unit_levels.items():
            weights = [level] if level is not None else [0, 1]
            for g in gpd.elements():
                if gpd.composable(u, g):
                    ug = gpd.mult(u, g)
                    for w in weights:
                        uf.union(g, ug, w + self._alpha_val[(u, g)])
                if gpd.composable(g, u):
                    gu = gpd.mult(g, u)
                    for w in weights:
                        uf.union(g, gu, w + self._alpha_val[(g, u)])
        uf.reroot(gpd.names)
        for r in set(uf.root(g) for g in gpd.elements()):
            if uf.modulus[r] not in (0, 1):
                raise InternalInvariantError(
                    "unit orbits collapsed to a proper subgroup of the value group"
                )
        return uf

    def _compute_rebase(self) -> Dict[int, int]:
        """Shift each orbit so that idempotent unit classes sit at offset 0."""
        gpd = self.ring.groupoid
        rebase: Dict[int, int] = {}
        for e in sorted(gpd.idempotents, key=lambda e: gpd.names[e]):
            r = self._uf.root(e)
            level = self._uf.phi(e)
            if r in rebase:
                if self._uf.modulus[r] == 0 and rebase[r] != level:
                    raise InternalInvariantError(
                        "idempotent units of one orbit disagree on their level"
                    )
            else:
                rebase[r] = level
        for g in gpd.elements():
            rebase.setdefault(self._uf.root(g), 0)
        return rebase

    def _compute_minshift(self) -> List[List[Bound]]:
        """minshift[y][x]: least weight of a passage x = f*y*h through the
        pattern (single homogeneous members suffice: members are closed under
        products and their own bounds are minimal)."""
        gpd = self.ring.groupoid
        p = self.pattern
        n = len(gpd)
        table: List[List[Bound]] = [[POS_INF] * n for _ in range(n)]
        for y in gpd.elements():
            for f in gpd.elements():
                if p.bound(f) == POS_INF or not gpd.composable(f, y):
                    continue
                fy = gpd.mult(f, y)
                a1 = self._alpha_val[(f, y)]
                for h in gpd.elements():
                    if p.bound(h) == POS_INF or not gpd.composable(fy, h):
                        continue
                    x = gpd.mult(fy, h)
                    w = bound_add(p.bound(f), p.bound(h), a1 + self._alpha_val[(fy, h)])
                    if w < table[y][x]:
                        table[y][x] = w
        return table

    def _check_structure(self) -> None:
        gpd = self.ring.groupoid
        for g in gpd.elements():
            ms = self._minshift[g][g]
            if not (ms <= 0):
                raise InternalInvariantError("self passage above level zero")
            if ms < 0 and self._uf.modulus[self._uf.root(g)] == 0:
                raise InternalInvariantError(
                    "negative self passage on a faithful orbit breaks antisymmetry"
                )

    def _build_gbar(self):
        """Two-sided cofinality classes of groupoid elements and their order."""
        gpd = self.ring.groupoid
        n = len(gpd)
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for a, b in itertools.product(range(n), repeat=2):
            if self._minshift[a][b] != POS_INF and self._minshift[b][a] != POS_INF:
                ra, rb = find(a), find(b)
                if ra != rb:
                    parent[ra] = rb
        classes: Dict[int, List[int]] = {}
        for g in range(n):
            classes.setdefault(find(g), []).append(g)
        named = {}
        gbar_of = {}
        for root, members in classes.items():
            label = min(gpd.names[m] for m in members)
            named[label] = tuple(sorted(gpd.names[m] for m in members))
            for m in members:
                gbar_of[m] = label
        return named, gbar_of

    # -- public views ----------------------------------------------------------

    def groupoid(self):
        return self.ring.groupoid

    def unit_component_names(self) -> Tuple[str, ...]:
        gpd = self.ring.groupoid
        return tuple(sorted(gpd.names[g] for g in self._unit_levels))

    def minshift(self, y: int, x: int) -> Bound:
        return self._minshift[y][x]

    def canon(self, g: int, level: int) -> OmegaClass:
        root = self._uf.root(g)
        off = level + self._uf.phi(g) - self._rebase[root]
        if self._uf.modulus[root] == 1:
            return OmegaClass(self.ring.groupoid.names[root], 0, True)
        return OmegaClass(self.ring.groupoid.names[root], off, False)

    def rep(self, cls: OmegaClass) -> Tuple[int, int]:
        root = self.ring.groupoid.index(cls.root)
        return root, cls.offset + self._rebase[root]

    def geq(self, a: OmegaClass, b: OmegaClass) -> bool:
        """a >= b: a is reachable from b by two-sided pattern multiplication."""
        ga, ma = self.rep(a)
        gb, mb = self.rep(b)
        ms = self._minshift[gb][ga]
        if a.collapsed or b.collapsed:
            return ms != POS_INF
        return ma - mb >= ms

    def leq(self, a: OmegaClass, b: OmegaClass) -> bool:
        return self.geq(b, a)

    def comparable(self, a: OmegaClass, b: OmegaClass) -> bool:
        return self.geq(a, b) or self.geq(b, a)

    def source(self, a: OmegaClass) -> OmegaClass:
        g, _ = self.rep(a)
        return self.canon(self.ring.groupoid.source(g), 0)

    def target(self, a: OmegaClass) -> OmegaClass:
        g, _ = self.rep(a)
        return self.canon(self.ring.groupoid.target(g), 0)

    def mul(self, a: OmegaClass, b: OmegaClass) -> Optional[OmegaClass]:
        """Class product, aligning through a unit component when needed."""
        gpd = self.ring.groupoid
        ga, ma = self.rep(a)
        gb, mb = self.rep(b)
        if gpd.composable(ga, gb):
            lvl = ma + mb + self._alpha_val[(ga, gb)]
            return self.canon(gpd.mult(ga, gb), lvl)
        for u in sorted(self._unit_levels):
            if gpd.source(u) == gpd.target(ga) and gpd.target(u) == gpd.source(gb):
                level = self._unit_levels[u]
                lu = 0 if level is None else level
                gau = gpd.mult(ga, u)
                out = gpd.mult(gau, gb)
                lvl = ma + lu + mb + self._alpha_val[(ga, u)] + self._alpha_val[(gau, gb)]
                return self.canon(out, lvl)
        return None

    def idempotent_classes(self) -> Tuple[OmegaClass, ...]:
        gpd = self.ring.groupoid
        seen = []
        for e in sorted(gpd.idempotents, key=lambda e: gpd.names[e]):
            cls = self.canon(e, 0)
            if cls not in seen:
                seen.append(cls)
        return tuple(seen)

    def is_group(self) -> bool:
        return len(self.idempotent_classes()) == 1

    # -- cofinality partition ---------------------------------------------------

    def gbar_classes(self) -> Dict[str, Tuple[str, ...]]:
        return dict(self._gbar)

    def gbar_of(self, g: int) -> str:
        return self._gbar_of[g]

    def gbar_lt(self, label_a: str, label_b: str) -> bool:
        """Every element of class a sits strictly below every element of b."""
        if label_a == label_b:
            return False
        gpd = self.ring.groupoid
        a = gpd.index(self._gbar[label_a][0])
        b = gpd.index(self._gbar[label_b][0])
        return self._minshift[a][b] == NEG_INF and self._minshift[b][a] == POS_INF

    def sort_key(self, cls: OmegaClass):
        return (cls.root, cls.collapsed, cls.offset)

    def render(self, cls: OmegaClass) -> str:
        label = self._gbar_of[self.ring.groupoid.index(cls.root)]
        return f"[{label}: {cls.render()}]"
