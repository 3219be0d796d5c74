"""Arithmetic on value bounds in Z extended by -inf/+inf.

A bound b describes the component set {c : w(c) >= b}.  +inf carves out the
zero component and is absorbing under addition: a product with a zero factor
contributes nothing, so any sum involving +inf is +inf and the corresponding
closure constraint is vacuous.  -inf (whole component) absorbs otherwise.
"""

from __future__ import annotations

from typing import Union

Bound = Union[int, float]

NEG_INF: Bound = float("-inf")
POS_INF: Bound = float("inf")


def is_finite(b: Bound) -> bool:
    return b != NEG_INF and b != POS_INF


def bound_add(*terms: Bound) -> Bound:
    """Sum of bounds; +inf absorbs before -inf (zero component wins)."""
    if any(t == POS_INF for t in terms):
        return POS_INF
    if any(t == NEG_INF for t in terms):
        return NEG_INF
    return sum(terms)


def bound_min(*terms: Bound) -> Bound:
    return min(terms)


def bound_max(*terms: Bound) -> Bound:
    return max(terms)


def parse_bound(raw) -> Bound:
    """Accept ints and the strings '+inf' / '-inf' (scenario file syntax)."""
    if isinstance(raw, bool):
        raise TypeError(f"not a bound: {raw!r}")
    if isinstance(raw, int):
        return raw
    if isinstance(raw, str):
        text = raw.strip()
        if text in ("+inf", "inf"):
            return POS_INF
        if text == "-inf":
            return NEG_INF
        try:
            return int(text)
        except ValueError:
            pass
    raise TypeError(f"not a bound: {raw!r}")


def render_bound(b: Bound) -> str:
    if b == POS_INF:
        return "+inf"
    if b == NEG_INF:
        return "-inf"
    return str(int(b))
