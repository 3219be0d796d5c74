"""Finite groupoids with partial multiplication.

Elements carry stable string names fixed at construction; every report and
witness refers to names.  An undefined product is returned as ``None`` rather
than raised: the graded arithmetic layers map it to the zero product.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import GradvalError, InternalInvariantError, NormalityViolation, NotSubgroupoid

MAX_ELEMENTS = 4096
_EXHAUSTIVE_ASSOC_LIMIT = 64


class FiniteGroup:
    """A finite group given by its multiplication table."""

    def __init__(self, names: Sequence[str], table: Sequence[Sequence[int]]):
        self.names = tuple(names)
        self.table = tuple(tuple(row) for row in table)
        n = len(self.names)
        if len(set(self.names)) != n or n == 0:
            raise GradvalError("group element names must be distinct and nonempty")
        ident = None
        for e in range(n):
            if all(self.table[e][x] == x and self.table[x][e] == x for x in range(n)):
                ident = e
                break
        if ident is None:
            raise GradvalError("multiplication table has no identity")
        self.identity = ident
        self.inverse = [0] * n
        for x in range(n):
            invs = [y for y in range(n) if self.table[x][y] == ident]
            if len(invs) != 1 or self.table[invs[0]][x] != ident:
                raise GradvalError(f"element {self.names[x]} has no unique inverse")
            self.inverse[x] = invs[0]
        for a, b, c in itertools.product(range(n), repeat=3):
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise GradvalError("multiplication table is not associative")

    def __len__(self) -> int:
        return len(self.names)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    @staticmethod
    def cyclic(n: int) -> "FiniteGroup":
        names = [str(i) for i in range(n)]
        table = [[(i + j) % n for j in range(n)] for i in range(n)]
        return FiniteGroup(names, table)

    @staticmethod
    def direct_product(g: "FiniteGroup", h: "FiniteGroup") -> "FiniteGroup":
        pairs = list(itertools.product(range(len(g)), range(len(h))))
        names = [f"({g.names[a]},{h.names[b]})" for a, b in pairs]
        index = {p: i for i, p in enumerate(pairs)}
        table = [
            [index[(g.mul(a, c), h.mul(b, d))] for (c, d) in pairs] for (a, b) in pairs
        ]
        return FiniteGroup(names, table)

    @staticmethod
    def klein_four() -> "FiniteGroup":
        return FiniteGroup.direct_product(FiniteGroup.cyclic(2), FiniteGroup.cyclic(2))


class Groupoid:
    """Immutable finite groupoid.

    ``mult`` maps composable index pairs to the product index; pairs absent
    from the map are undefined.  Construction validates the groupoid axioms
    (exhaustively for small element counts, sampled above
    ``_EXHAUSTIVE_ASSOC_LIMIT``).
    """

    def __init__(
        self,
        names: Sequence[str],
        mult: Dict[Tuple[int, int], int],
        inverse: Sequence[int],
        validate: bool = True,
    ):
        self.names: Tuple[str, ...] = tuple(names)
        if len(self.names) == 0:
            raise GradvalError("groupoid must be nonempty")
        if len(self.names) > MAX_ELEMENTS:
            raise GradvalError(f"groupoid exceeds the {MAX_ELEMENTS}-element cap")
        if len(set(self.names)) != len(self.names):
            raise GradvalError("element names must be distinct")
        self._mult = dict(mult)
        self.inverse_table: Tuple[int, ...] = tuple(inverse)
        self._index = {nm: i for i, nm in enumerate(self.names)}
        n = len(self.names)

        self.source_table = [0] * n
        self.target_table = [0] * n
        for g in range(n):
            gi = self.inverse_table[g]
            s = self._mult.get((g, gi))
            t = self._mult.get((gi, g))
            if s is None or t is None:
                raise GradvalError(f"source/target undefined for {self.names[g]}")
            self.source_table[g] = s
            self.target_table[g] = t

        self.idempotents: Tuple[int, ...] = tuple(
            g for g in range(n) if self._mult.get((g, g)) == g
        )
        if not self.idempotents:
            raise GradvalError("groupoid has no idempotents")
        if validate:
            self._validate()

    # -- basic queries ---------------------------------------------------

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        if name not in self._index:
            raise GradvalError(f"unknown groupoid element {name!r}")
        return self._index[name]

    def has_name(self, name: str) -> bool:
        return name in self._index

    def mult(self, g: int, h: int) -> Optional[int]:
        """Product index, or None when undefined."""
        return self._mult.get((g, h))

    def inv(self, g: int) -> int:
        return self.inverse_table[g]

    def source(self, g: int) -> int:
        return self.source_table[g]

    def target(self, g: int) -> int:
        return self.target_table[g]

    def composable(self, g: int, h: int) -> bool:
        return (g, h) in self._mult

    def composable_pairs(self) -> Iterable[Tuple[int, int]]:
        return self._mult.keys()

    def elements(self) -> range:
        return range(len(self.names))

    def is_group(self) -> bool:
        return len(self.idempotents) == 1

    def vertex_group(self, e: int) -> List[int]:
        """Elements with source and target both equal to the idempotent e."""
        return [g for g in self.elements() if self.source(g) == e and self.target(g) == e]

    def __repr__(self) -> str:
        return f"Groupoid({len(self)} elements, {len(self.idempotents)} idempotents)"

    # -- validation ------------------------------------------------------

    def _validate(self) -> None:
        n = len(self.names)
        for g in range(n):
            if self.inverse_table[self.inverse_table[g]] != g:
                raise GradvalError(f"inverse not involutive at {self.names[g]}")
            s, t = self.source_table[g], self.target_table[g]
            if self._mult.get((s, g)) != g or self._mult.get((g, t)) != g:
                raise GradvalError(f"unit laws fail at {self.names[g]}")
        for g, h in itertools.product(range(n), repeat=2):
            defined = (g, h) in self._mult
            if defined != (self.target_table[g] == self.source_table[h]):
                raise GradvalError(
                    f"composability of ({self.names[g]},{self.names[h]}) "
                    "does not match target/source"
                )
        if n <= _EXHAUSTIVE_ASSOC_LIMIT:
            triples = itertools.product(range(n), repeat=3)
        else:
            rng = random.Random(0)
            triples = (
                tuple(rng.randrange(n) for _ in range(3)) for _ in range(200_000)
            )
        for a, b, c in triples:
            ab = self._mult.get((a, b))
            bc = self._mult.get((b, c))
            left = self._mult.get((ab, c)) if ab is not None else None
            right = self._mult.get((a, bc)) if bc is not None else None
            if left != right:
                raise GradvalError(
                    f"associativity fails on ({self.names[a]},{self.names[b]},{self.names[c]})"
                )


# -- constructors ---------------------------------------------------------


def _delta_name(i: int, j: int, n: int) -> str:
    if n <= 9:
        return f"e{i}{j}"
    return f"e({i},{j})"


def delta(n: int) -> Groupoid:
    """Matrix-unit groupoid on n objects: e_ij * e_kl = e_il iff j = k."""
    if n < 1:
        raise GradvalError("delta(n) requires n >= 1")
    pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    names = [_delta_name(i, j, n) for i, j in pairs]
    index = {p: k for k, p in enumerate(pairs)}
    mult = {}
    for (i, j), (k, l) in itertools.product(pairs, repeat=2):
        if j == k:
            mult[(index[(i, j)], index[(k, l)])] = index[(i, l)]
    inverse = [index[(j, i)] for (i, j) in pairs]
    return Groupoid(names, mult, inverse)


def product_with_delta(group: FiniteGroup, n: int) -> Groupoid:
    """Groupoid on H x delta(n): (h,e_ij)(h',e_kl) = (hh',e_il) iff j = k."""
    if n < 1:
        raise GradvalError("product_with_delta requires n >= 1")
    dpairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1)]
    elems = [(h, p) for h in range(len(group)) for p in dpairs]
    names = [f"({group.names[h]},{_delta_name(i, j, n)})" for h, (i, j) in elems]
    index = {e: k for k, e in enumerate(elems)}
    mult = {}
    for (h, (i, j)), (h2, (k, l)) in itertools.product(elems, repeat=2):
        if j == k:
            mult[(index[(h, (i, j))], index[(h2, (k, l))])] = index[
                (group.mul(h, h2), (i, l))
            ]
    inverse = [index[(group.inverse[h], (j, i))] for (h, (i, j)) in elems]
    return Groupoid(names, mult, inverse)


def group_groupoid(group: FiniteGroup, names: Optional[Sequence[str]] = None) -> Groupoid:
    """A group viewed as a one-object groupoid, with optional renaming."""
    use = tuple(names) if names is not None else group.names
    if len(use) != len(group):
        raise GradvalError("renaming must cover every group element")
    mult = {
        (a, b): group.mul(a, b)
        for a, b in itertools.product(range(len(group)), repeat=2)
    }
    return Groupoid(use, mult, group.inverse)


def disjoint_union(a: Groupoid, b: Groupoid, tags: Tuple[str, str] = ("a:", "b:")) -> Groupoid:
    names = [tags[0] + nm for nm in a.names] + [tags[1] + nm for nm in b.names]
    off = len(a)
    mult = {(g, h): a.mult(g, h) for g, h in a.composable_pairs()}
    for g, h in b.composable_pairs():
        mult[(g + off, h + off)] = b.mult(g, h) + off
    inverse = list(a.inverse_table) + [x + off for x in b.inverse_table]
    return Groupoid(names, mult, inverse)


# -- connectivity ----------------------------------------------------------


@dataclass(frozen=True)
class ConnectedPartition:
    """Partition of the element set into connected components (name tuples)."""

    classes: Tuple[Tuple[str, ...], ...]

    def class_of(self, name: str) -> Tuple[str, ...]:
        for cls in self.classes:
            if name in cls:
                return cls
        raise GradvalError(f"unknown element {name!r}")

    def __len__(self) -> int:
        return len(self.classes)


def connected_components(g: Groupoid) -> ConnectedPartition:
    """Group elements by reachability between their sources and targets."""
    parent = list(range(len(g)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for h in g.elements():
        union(g.source(h), g.target(h))
        union(h, g.source(h))
    buckets: Dict[int, List[str]] = {}
    for h in g.elements():
        buckets.setdefault(find(h), []).append(g.names[h])
    classes = tuple(
        tuple(sorted(v)) for _, v in sorted(buckets.items(), key=lambda kv: min(kv[1]))
    )
    return ConnectedPartition(classes)


def is_connected(g: Groupoid) -> bool:
    return len(connected_components(g)) == 1


# -- quotients -------------------------------------------------------------


def quotient(g: Groupoid, sub_names: Iterable[str]) -> Tuple[Groupoid, Dict[str, str]]:
    """Quotient by a wide subgroupoid with conjugation-stable vertex groups.

    Returns the quotient groupoid together with the projection on names.
    Classes are named after their least member.
    """
    sub = sorted({g.index(nm) for nm in sub_names})
    subset = set(sub)
    for e in g.idempotents:
        if e not in subset:
            raise NotSubgroupoid(f"subgroupoid must contain idempotent {g.names[e]}")
    for x in sub:
        if g.inv(x) not in subset:
            raise NotSubgroupoid(f"not closed under inverse at {g.names[x]}")
        for y in sub:
            p = g.mult(x, y)
            if p is not None and p not in subset:
                raise NotSubgroupoid(
                    f"not closed under product at ({g.names[x]},{g.names[y]})"
                )
    vertex: Dict[int, set] = {
        e: {f for f in sub if g.source(f) == e and g.target(f) == e}
        for e in g.idempotents
    }
    for h in g.elements():
        t_grp = vertex[g.target(h)]
        conj = set()
        for f in t_grp:
            hf = g.mult(h, f)
            if hf is None:
                raise InternalInvariantError("vertex element not composable")
            conj.add(g.mult(hf, g.inv(h)))
        if conj != vertex[g.source(h)]:
            raise NormalityViolation(
                f"conjugation by {g.names[h]} moves the vertex group at "
                f"{g.names[g.target(h)]} off the one at {g.names[g.source(h)]}"
            )

    parent = list(range(len(g)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            parent[rx] = ry

    for h in g.elements():
        for fs in sub:
            fh = g.mult(fs, h)
            if fh is None:
                continue
            for ft in sub:
                full = g.mult(fh, ft)
                if full is not None:
                    union(h, full)

    roots = sorted({find(x) for x in g.elements()})
    members: Dict[int, List[int]] = {r: [] for r in roots}
    for x in g.elements():
        members[find(x)].append(x)
    class_name = {r: min(g.names[x] for x in members[r]) for r in roots}
    class_idx = {r: i for i, r in enumerate(sorted(roots, key=lambda r: class_name[r]))}

    mult: Dict[Tuple[int, int], int] = {}
    for x, y in g.composable_pairs():
        p = g.mult(x, y)
        key = (class_idx[find(x)], class_idx[find(y)])
        existing = mult.get(key)
        if existing is not None and existing != class_idx[find(p)]:
            raise InternalInvariantError("quotient multiplication is not well-defined")
        mult[key] = class_idx[find(p)]
    inverse = [0] * len(roots)
    for r in roots:
        inverse[class_idx[r]] = class_idx[find(g.inv(members[r][0]))]
    names = [class_name[r] for r in sorted(roots, key=lambda r: class_name[r])]
    q = Groupoid(names, mult, inverse)
    projection = {g.names[x]: class_name[find(x)] for x in g.elements()}
    return q, projection


# -- partial orders --------------------------------------------------------


@dataclass(frozen=True)
class OrderReport:
    partial_order: bool
    compatible: bool
    ordered: bool
    witnesses: Tuple[str, ...]

    def all_pass(self) -> bool:
        return self.partial_order and self.compatible and self.ordered


class GroupoidOrder:
    """A relation <= on a groupoid's elements, evaluated as given.

    ``pairs`` lists (lower, upper) name pairs; the reflexive pairs are added
    automatically, nothing else is inferred.  Use ``transitive_closure`` when
    a covering relation is more convenient to write down.
    """

    def __init__(self, base: Groupoid, pairs: Iterable[Tuple[str, str]]):
        self.base = base
        le = {(g, g) for g in base.elements()}
        for lo, hi in pairs:
            le.add((base.index(lo), base.index(hi)))
        self.le = frozenset(le)

    def leq(self, a: int, b: int) -> bool:
        return (a, b) in self.le

    def lt(self, a: int, b: int) -> bool:
        return a != b and (a, b) in self.le

    @staticmethod
    def transitive_closure(base: Groupoid, pairs: Iterable[Tuple[str, str]]) -> "GroupoidOrder":
        rel = {(base.index(lo), base.index(hi)) for lo, hi in pairs}
        changed = True
        while changed:
            changed = False
            for (a, b), (c, d) in itertools.product(list(rel), repeat=2):
                if b == c and (a, d) not in rel:
                    rel.add((a, d))
                    changed = True
        return GroupoidOrder(base, [(base.names[a], base.names[b]) for a, b in rel])


def validate_order(order: GroupoidOrder) -> OrderReport:
    g = order.base
    witnesses: List[str] = []
    partial = True
    for a, b in order.le:
        if a != b and (b, a) in order.le:
            partial = False
            witnesses.append(f"antisymmetry: {g.names[a]} <= {g.names[b]} <= {g.names[a]}")
    for a, b in order.le:
        for c, d in order.le:
            if b == c and (a, d) not in order.le:
                partial = False
                witnesses.append(
                    f"transitivity: {g.names[a]} <= {g.names[b]} <= {g.names[d]} unmatched"
                )
    compatible = True
    for a, b in order.le:
        if a == b:
            continue
        for h in g.elements():
            ha, hb = g.mult(h, a), g.mult(h, b)
            if ha is not None and hb is not None and (ha, hb) not in order.le:
                compatible = False
                witnesses.append(
                    f"left compatibility: {g.names[h]}*{g.names[a]} !<= "
                    f"{g.names[h]}*{g.names[b]}"
                )
            ah, bh = g.mult(a, h), g.mult(b, h)
            if ah is not None and bh is not None and (ah, bh) not in order.le:
                compatible = False
                witnesses.append(
                    f"right compatibility: {g.names[a]}*{g.names[h]} !<= "
                    f"{g.names[b]}*{g.names[h]}"
                )
    ordered = True
    for h in g.elements():
        for unit in (g.source(h), g.target(h)):
            if not (order.leq(h, unit) or order.leq(unit, h)):
                ordered = False
                witnesses.append(
                    f"ordered: {g.names[h]} incomparable to unit {g.names[unit]}"
                )
    return OrderReport(partial, compatible, ordered, tuple(sorted(set(witnesses))))
