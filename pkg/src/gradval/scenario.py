"""Scenario files: a TOML tree describing field, groupoid, twist, bounds.

Sections: [field], [groupoid], optional [twist], [order], [subring],
[ideals.NAME], [elements].  Bounds are integers or the strings "+inf"/"-inf";
scalars and elements use the string grammars of the scalar and element
parsers.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional

if sys.version_info >= (3, 11):
    import tomllib
else:  # pragma: no cover
    import tomli as tomllib

from . import scalars as sc
from .algebra import (
    GradedElement,
    Twist,
    TwistedGroupoidRing,
    parse_element,
    trivial_twist,
    validate_twist,
)
from .bounds import parse_bound
from .errors import GradvalError, ParseError, UnknownExample, ValidationError
from .groupoids import (
    FiniteGroup,
    Groupoid,
    GroupoidOrder,
    delta,
    group_groupoid,
    product_with_delta,
)
from .patterns import BoundPattern, SUBRING, validate_pattern
from .scalars import FieldAutomorphism, FieldSpec

_GROUPS = {
    "Z1": lambda: FiniteGroup.cyclic(1),
    "Z2": lambda: FiniteGroup.cyclic(2),
    "Z3": lambda: FiniteGroup.cyclic(3),
    "Z4": lambda: FiniteGroup.cyclic(4),
    "klein": FiniteGroup.klein_four,
}

_IDEAL_KINDS = {
    "left": "left_ideal",
    "right": "right_ideal",
    "two_sided": "two_sided_ideal",
}


@dataclass
class Scenario:
    id: str
    title: str
    ring: TwistedGroupoidRing
    subring: Optional[BoundPattern]
    ideals: Dict[str, BoundPattern]
    order: Optional[GroupoidOrder]
    elements: Dict[str, GradedElement]
    source: str = ""


def _field_spec(data: dict) -> FieldSpec:
    kind = data.get("kind")
    valuation = data.get("valuation", "trivial")
    try:
        if kind == "rationals":
            return FieldSpec(sc.RAT, valuation, prime=data.get("prime"))
        if kind == "quadratic":
            return FieldSpec(sc.QUAD, valuation, prime=data.get("prime"), quad=data.get("a"))
        if kind == "prime":
            return FieldSpec(sc.PRIME, valuation, prime=data.get("prime"))
    except GradvalError as exc:
        raise ValidationError(f"[field] {exc}") from exc
    raise ValidationError(f"[field] unknown kind {kind!r}")


def _groupoid(data: dict) -> Groupoid:
    kind = data.get("kind")
    if kind == "delta":
        return delta(int(data.get("n", 0)))
    if kind in ("group", "group_delta"):
        name = data.get("group")
        if name not in _GROUPS:
            raise ValidationError(f"[groupoid] unknown group {name!r}")
        group = _GROUPS[name]()
        if kind == "group":
            return group_groupoid(group, names=data.get("names"))
        return product_with_delta(group, int(data.get("n", 0)))
    raise ValidationError(f"[groupoid] unknown kind {kind!r}")


def _twist(data: Optional[dict], spec: FieldSpec, gpd: Groupoid) -> Twist:
    base = trivial_twist(spec, gpd)
    if not data:
        return base
    alpha = dict(base.alpha)
    sigma = dict(base.sigma)
    for row in data.get("alpha", []):
        if len(row) != 3:
            raise ValidationError(f"[twist] alpha rows are [f, g, value], got {row!r}")
        f, g, raw = row
        pair = (gpd.index(f), gpd.index(g))
        if pair not in alpha:
            raise ValidationError(f"[twist] alpha on non-composable pair ({f},{g})")
        value = sc.parse_scalar(spec, str(raw))
        if value.is_zero():
            raise ValidationError(f"[twist] twist value must be nonzero at ({f},{g})")
        alpha[pair] = value
    for row in data.get("alpha_from_group", []):
        if len(row) != 3:
            raise ValidationError("[twist] alpha_from_group rows are [h, h2, value]")
        h, h2, raw = row
        value = sc.parse_scalar(spec, str(raw))
        if value.is_zero():
            raise ValidationError(f"[twist] twist value must be nonzero at ({h},{h2})")
        hits = 0
        for (a, b) in list(alpha):
            na, nb = gpd.names[a], gpd.names[b]
            if na.startswith(f"({h},") and nb.startswith(f"({h2},"):
                alpha[(a, b)] = value
                hits += 1
        if not hits:
            raise ValidationError(f"[twist] no composable pairs match ({h},{h2})")
    for name, kind in data.get("sigma", {}).items():
        try:
            sigma[gpd.index(name)] = FieldAutomorphism(kind)
        except GradvalError as exc:
            raise ValidationError(f"[twist] {exc}") from exc
    return Twist(alpha, sigma)


def _bounds_section(data: dict, gpd: Groupoid) -> Dict[str, object]:
    out = {}
    for key, raw in data.items():
        if key == "kind":
            continue
        if not gpd.has_name(key):
            raise ValidationError(f"unknown groupoid element {key!r} in bounds")
        try:
            out[key] = parse_bound(raw)
        except TypeError as exc:
            raise ValidationError(str(exc)) from exc
    return out


def load_scenario(path) -> Scenario:
    path = Path(path)
    if not path.exists():
        raise ParseError(f"no such scenario file: {path}")
    try:
        data = tomllib.loads(path.read_text())
    except tomllib.TOMLDecodeError as exc:
        raise ParseError(f"{path}: {exc}") from exc
    return build_scenario(data, source=str(path))


def build_scenario(data: dict, source: str = "") -> Scenario:
    for section in ("field", "groupoid"):
        if section not in data:
            raise ValidationError(f"missing [{section}] section")
    spec = _field_spec(data["field"])
    gpd = _groupoid(data["groupoid"])
    twist = _twist(data.get("twist"), spec, gpd)
    report = validate_twist(spec, gpd, twist)
    if not report.all_pass():
        raise ValidationError("twist conditions fail: " + "; ".join(report.witnesses[:3]))
    ring = TwistedGroupoidRing(spec, gpd, twist, validate=False)

    subring = None
    if "subring" in data:
        subring = BoundPattern(ring, _bounds_section(data["subring"], gpd), SUBRING)
        rep = validate_pattern(subring)
        if not rep.ok:
            raise ValidationError("subring pattern invalid: " + "; ".join(rep.witnesses[:3]))

    ideals: Dict[str, BoundPattern] = {}
    for name, section in data.get("ideals", {}).items():
        kind = section.get("kind", "two_sided")
        if kind not in _IDEAL_KINDS:
            raise ValidationError(f"[ideals.{name}] unknown kind {kind!r}")
        ideal = BoundPattern(ring, _bounds_section(section, gpd), _IDEAL_KINDS[kind])
        if subring is None:
            raise ValidationError(f"[ideals.{name}] declared without a [subring]")
        rep = validate_pattern(ideal, ambient=subring)
        if not rep.ok:
            raise ValidationError(
                f"[ideals.{name}] invalid: " + "; ".join(rep.witnesses[:3])
            )
        ideals[name] = ideal

    order = None
    if "order" in data:
        pairs = [tuple(p) for p in data["order"].get("pairs", [])]
        order = GroupoidOrder.transitive_closure(gpd, pairs)

    elements: Dict[str, GradedElement] = {}
    for name, text in data.get("elements", {}).items():
        elements[name] = parse_element(ring, str(text))

    return Scenario(
        id=str(data.get("id", source or "scenario")),
        title=str(data.get("title", "")),
        ring=ring,
        subring=subring,
        ideals=ideals,
        order=order,
        elements=elements,
        source=source,
    )


def corpus_names() -> List[str]:
    root = resources.files("gradval").joinpath("corpus")
    return sorted(p.name[: -len(".toml")] for p in root.iterdir() if p.name.endswith(".toml"))


def load_corpus_scenario(name: str) -> Scenario:
    root = resources.files("gradval").joinpath("corpus")
    entry = root.joinpath(f"{name}.toml")
    if not entry.is_file():
        raise UnknownExample(f"no corpus scenario named {name!r}")
    data = tomllib.loads(entry.read_text())
    return build_scenario(data, source=f"corpus:{name}")
