"""Check orchestration and machine-readable reports.

``run_checks`` executes the generic verification pipeline on a scenario in
dependency order (validation, predicates, ideals, radical/residue, value
machinery, recovery, axioms, Dubrovin).  ``reproduce`` adds the pinned
expectations of the named corpus example on top.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from . import __version__
from . import scalars as sc
from .algebra import graded_inverse, in_central_idempotent_ideal, is_central, validate_twist
from .bounds import NEG_INF, POS_INF, render_bound
from .dubrovin import check_hypothesis, dubrovin_report, dubrovin_witness
from .errors import GradvalError, HypothesisViolation, UnknownExample
from .groupoids import GroupoidOrder, is_connected, validate_order
from .patterns import (
    BoundPattern,
    INCOMPARABLE,
    compare_ideals,
    component_representatives,
    cyclic_generator,
    extend_component_ideals,
    generated_ideal,
    is_stable,
    is_total,
    is_valuation_ring,
    oracle_is_stable,
    oracle_is_total,
    oracle_noninvertible_levels,
    positives_ideal,
    residue_ring,
    restrict_component_ideals,
    validate_pattern,
    value_window,
)
from .scenario import Scenario, load_corpus_scenario
from .valuation import (
    CanonicalValuation,
    OrderValuation,
    RelabeledValuation,
    check_axioms,
    equivalent,
    positives_agree,
    random_ring_element,
)

PASS = "pass"
FAIL = "fail"
SKIP = "skipped"
ERROR = "error"


@dataclass(frozen=True)
class CheckResult:
    name: str
    status: str
    detail: str = ""
    witness: str = ""


class CheckContext:
    def __init__(self, scenario: Scenario, seed: int, radius: int):
        self.scenario = scenario
        self.seed = seed
        self.radius = radius
        self._valuation: Optional[CanonicalValuation] = None
        self._valuation_built = False

    def rng(self, salt: str) -> random.Random:
        return random.Random(f"{self.seed}:{salt}")

    def valuation(self) -> Optional[CanonicalValuation]:
        if not self._valuation_built:
            self._valuation_built = True
            p = self.scenario.subring
            if p is not None and is_valuation_ring(p):
                self._valuation = CanonicalValuation(p)
        return self._valuation


Check = Callable[[CheckContext], List[CheckResult]]


# -- generic checks -----------------------------------------------------------


def check_twist(ctx: CheckContext) -> List[CheckResult]:
    ring = ctx.scenario.ring
    report = validate_twist(ring.spec, ring.groupoid, ring.twist)
    pairs = len(list(ring.groupoid.composable_pairs()))
    triples = sum(
        1
        for f, g in ring.groupoid.composable_pairs()
        for h in ring.groupoid.elements()
        if ring.groupoid.composable(g, h)
    )
    out = []
    for label, ok in [
        ("twist-automorphism-multiplicative", report.sigma_multiplicative),
        ("twist-cocycle", report.cocycle),
        ("twist-unital", report.unital),
        ("twist-domain", report.domain),
    ]:
        witness = "" if ok else "; ".join(report.witnesses[:2])
        detail = f"{pairs} pairs, {triples} triples" if label == "twist-cocycle" else ""
        out.append(CheckResult(label, PASS if ok else FAIL, detail, witness))
    return out


def check_skewfield_predicates(ctx: CheckContext) -> List[CheckResult]:
    ring = ctx.scenario.ring
    group = ring.groupoid.is_group()
    connected = is_connected(ring.groupoid)
    results = [
        CheckResult("skewfield", PASS if ring.is_skewfield() else FAIL),
        CheckResult("strongly-graded", PASS if ring.is_strongly_graded() else FAIL),
        CheckResult(
            "group-iff-ring-invertible-homogeneous",
            PASS if ring.has_ring_invertible_homogeneous() == group else FAIL,
            f"group={group}",
        ),
        CheckResult(
            "graded-simple-iff-connected",
            PASS if ring.is_graded_simple() == connected else FAIL,
            f"connected={connected}",
        ),
    ]
    return results


def check_order(ctx: CheckContext) -> List[CheckResult]:
    if ctx.scenario.order is None:
        return [CheckResult("order-validation", SKIP, "no order declared")]
    report = validate_order(ctx.scenario.order)
    status = PASS if report.all_pass() else FAIL
    detail = (
        f"partial_order={report.partial_order} compatible={report.compatible} "
        f"ordered={report.ordered}"
    )
    return [CheckResult("order-validation", status, detail, "; ".join(report.witnesses[:2]))]


def check_pattern(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    if p is None:
        return [CheckResult("pattern-validation", SKIP, "no subring declared")]
    report = validate_pattern(p)
    return [
        CheckResult(
            "pattern-validation",
            PASS if report.ok else FAIL,
            p.render(),
            "; ".join(report.witnesses[:2]),
        )
    ]


def check_subring_predicates(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    if p is None:
        return [CheckResult("subring-predicates", SKIP, "no subring declared")]
    total, stable = is_total(p), is_stable(p)
    o_total, w1 = oracle_is_total(p, ctx.radius)
    o_stable, w2 = oracle_is_stable(p, min(ctx.radius, 4))
    agree = total == o_total and stable == o_stable
    detail = f"total={total} stable={stable} valuation_ring={total and stable}"
    witness = "" if agree else f"oracle disagreement: {w1 or ''} {w2 or ''}"
    return [CheckResult("subring-predicates", PASS if agree else FAIL, detail, witness)]


def check_ideals(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    ideals = ctx.scenario.ideals
    if not ideals:
        return [CheckResult("ideal-validation", SKIP, "no ideals declared")]
    out = []
    for name in sorted(ideals):
        report = validate_pattern(ideals[name], ambient=p)
        out.append(
            CheckResult(
                f"ideal-validation:{name}",
                PASS if report.ok else FAIL,
                ideals[name].render(),
                "; ".join(report.witnesses[:2]),
            )
        )
    for a, b in itertools.combinations(sorted(ideals), 2):
        rel = compare_ideals(ideals[a], ideals[b], parent=p)
        out.append(
            CheckResult(
                f"ideal-comparison:{a}:{b}", PASS, rel.relation, "; ".join(rel.witnesses)
            )
        )
    return out


def check_positives(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    if p is None or not is_total(p):
        return [CheckResult("positives", SKIP, "needs a total subring")]
    ideal, raw = positives_ideal(p)
    gpd = p.ring.groupoid
    witness = ""
    ok = True
    for g in gpd.elements():
        scanned = oracle_noninvertible_levels(p, g, ctx.radius)
        expected_from = raw[gpd.names[g]]
        window = value_window(p.ring, ctx.radius)
        expected = [m for m in window if m >= expected_from]
        if scanned != expected:
            ok = False
            witness = f"component {gpd.names[g]}: scan {scanned[:3]}.. vs bound {render_bound(expected_from)}"
            break
    detail = ", ".join(f"{nm}={render_bound(b)}" for nm, b in sorted(raw.items()))
    return [CheckResult("positives", PASS if ok else FAIL, detail, witness)]


def check_residue(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    if p is None or not is_total(p):
        return [CheckResult("residue", SKIP, "needs a total subring")]
    try:
        res = residue_ring(p)
    except GradvalError as exc:
        return [CheckResult("residue", FAIL, "", str(exc))]
    ok = res.ring.is_skewfield()
    detail = (
        f"support={','.join(res.support_names)} simple_artinian={res.simple_artinian}"
    )
    return [CheckResult("residue", PASS if ok else FAIL, detail)]


def check_value_machinery(ctx: CheckContext) -> List[CheckResult]:
    val = ctx.valuation()
    if val is None:
        return [CheckResult("value-machinery", SKIP, "needs a valuation-ring pattern")]
    omega = val.omega
    gpd = omega.ring.groupoid
    ok = True
    witness = ""
    window = value_window(omega.ring, min(ctx.radius, 4))
    classes = sorted(
        {omega.canon(g, m) for g in gpd.elements() for m in window},
        key=omega.sort_key,
    )
    for cls in classes:
        if not (
            omega.comparable(cls, omega.source(cls))
            and omega.comparable(cls, omega.target(cls))
        ):
            ok = False
            witness = f"{cls.render()} incomparable to its units"
            break
    for a, b in itertools.combinations(classes, 2):
        if omega.geq(a, b) and omega.geq(b, a):
            ok = False
            witness = f"{a.render()} and {b.render()} mutually dominate"
            break
    full_support = all(p != POS_INF for p in (val.pattern.bound(g) for g in gpd.elements()))
    group_expected = full_support and is_connected(gpd)
    idem = len(omega.idempotent_classes())
    if group_expected and idem != 1:
        ok = False
        witness = f"expected one idempotent class, found {idem}"
    gbar = omega.gbar_classes()
    detail = (
        f"idempotent_classes={idem} group={omega.is_group()} "
        f"support_classes={len(gbar)} units={','.join(omega.unit_component_names())}"
    )
    return [CheckResult("value-machinery", PASS if ok else FAIL, detail, witness)]


def check_valuation_axioms(ctx: CheckContext) -> List[CheckResult]:
    val = ctx.valuation()
    if val is None:
        return [CheckResult("valuation-axioms", SKIP, "needs a valuation-ring pattern")]
    out = []
    for chk in check_axioms(val, seed=ctx.seed, radius=min(ctx.radius, 4), n_triples=1000):
        out.append(
            CheckResult(
                f"axiom:{chk.name}", PASS if chk.ok else FAIL, chk.detail, chk.witness
            )
        )
    return out


def check_recovery(ctx: CheckContext) -> List[CheckResult]:
    val = ctx.valuation()
    if val is None:
        return [CheckResult("recovery", SKIP, "needs a valuation-ring pattern")]
    t, s = val.ring_from_targets(), val.ring_from_sources()
    ok = t == val.pattern == s
    witness = "" if ok else f"T: {t.render()} | S: {s.render()}"
    return [CheckResult("recovery", PASS if ok else FAIL, "T == R == S", witness)]


def check_positives_corollary(ctx: CheckContext) -> List[CheckResult]:
    val = ctx.valuation()
    if val is None:
        return [CheckResult("positives-corollary", SKIP, "needs a valuation-ring pattern")]
    ok, witness = positives_agree(val, val.pattern, radius=min(ctx.radius, 5))
    return [CheckResult("positives-corollary", PASS if ok else FAIL, "", witness)]


def check_dubrovin(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    if p is None:
        return [CheckResult("dubrovin", SKIP, "no subring declared")]
    try:
        report = dubrovin_report(p)
    except HypothesisViolation as exc:
        return [CheckResult("dubrovin", SKIP, "hypothesis violated", str(exc))]
    val = ctx.valuation()
    ideal, _ = positives_ideal(p)
    rng = ctx.rng("dubrovin")
    checked = 0
    witness = ""
    ok = report.residue_simple_artinian
    attempts = 0
    while checked < 10 and attempts < 2000:
        attempts += 1
        x = random_ring_element(p.ring, rng, density=0.8, level_span=3)
        if x.is_zero() or p.contains(x):
            continue
        checked += 1
        try:
            r, rp = dubrovin_witness(p, val, x)
        except GradvalError as exc:
            ok = False
            witness = str(exc)
            break
        if not (
            p.contains(r * x)
            and p.contains(x * rp)
            and not ideal.contains(r * x)
            and not ideal.contains(x * rp)
        ):
            ok = False
            witness = f"witness products escaped R\\M for {x!r}"
            break
    if checked:
        detail = f"{report.detail}; {checked} outside elements pushed into R\\M"
    else:
        detail = f"{report.detail}; pattern fills the ring, no outside elements"
    return [CheckResult("dubrovin", PASS if ok else FAIL, detail, witness)]


def check_order_valuation(ctx: CheckContext) -> List[CheckResult]:
    scenario = ctx.scenario
    if scenario.order is None:
        return [CheckResult("order-valuation", SKIP, "no order declared")]
    report = validate_order(scenario.order)
    if not report.all_pass():
        return [CheckResult("order-valuation", SKIP, "order does not validate")]
    val = OrderValuation(scenario.ring, scenario.order)
    checks = {c.name: c for c in check_axioms(val, seed=ctx.seed, radius=min(ctx.radius, 4), n_triples=300)}
    core_ok = all(
        checks[name].ok
        for name in (
            "infinity-only-at-zero",
            "sum-dominates-common-bound",
            "homogeneous-multiplicativity",
        )
    )
    t, s = val.ring_from_targets(), val.ring_from_sources()
    detail = (
        f"canonical={checks['canonical-two-sided'].ok} "
        f"T=({t.render()}) S=({s.render()})"
    )
    witness = "" if core_ok else next(c.witness for c in checks.values() if not c.ok)
    return [CheckResult("order-valuation", PASS if core_ok else FAIL, detail, witness)]


GENERIC_CHECKS: Tuple[Check, ...] = (
    check_twist,
    check_skewfield_predicates,
    check_order,
    check_pattern,
    check_subring_predicates,
    check_ideals,
    check_positives,
    check_residue,
    check_value_machinery,
    check_valuation_axioms,
    check_recovery,
    check_positives_corollary,
    check_order_valuation,
    check_dubrovin,
)


# -- pinned expectations for the corpus examples --------------------------------


def _result(name: str, ok: bool, detail: str = "", witness: str = "") -> List[CheckResult]:
    return [CheckResult(name, PASS if ok else FAIL, detail, witness)]


def expect_total_stable(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    ok = p is not None and is_total(p) and is_stable(p)
    return _result("expect:total-and-stable", ok)


def expect_ideals_incomparable(ctx: CheckContext) -> List[CheckResult]:
    ideals = ctx.scenario.ideals
    rel = compare_ideals(ideals["I"], ideals["J"], parent=ctx.scenario.subring)
    rel2 = compare_ideals(ideals["J"], ideals["I"], parent=ctx.scenario.subring)
    ok = rel.relation == INCOMPARABLE and rel2.relation == INCOMPARABLE
    return _result(
        "expect:ideals-incomparable", ok, f"I vs J: {rel.relation}", "; ".join(rel.witnesses)
    )


def expect_unit_pair_ideal_not_cyclic(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    gens = [p.ring.unit(e) for e in p.ring.groupoid.idempotents]
    ideal = generated_ideal(p, gens, "two_sided")
    gen = cyclic_generator(p, ideal, "two_sided", radius=6)
    return _result(
        "expect:unit-pair-ideal-not-cyclic",
        gen is None,
        "window [-6, 6]",
        "" if gen is None else f"generator {gen!r}",
    )


def expect_positives_bounds(expected: Dict[str, object]) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        _, raw = positives_ideal(ctx.scenario.subring)
        ok = raw == expected
        detail = ", ".join(f"{k}={render_bound(v)}" for k, v in sorted(raw.items()))
        return _result("expect:positives-bounds", ok, detail)

    return run


def expect_residue(support: Tuple[str, ...], simple: bool) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        res = residue_ring(ctx.scenario.subring)
        ok = res.support_names == support and res.simple_artinian == simple
        detail = f"support={','.join(res.support_names)} simple={res.simple_artinian}"
        return _result("expect:residue", ok, detail)

    return run


def expect_dubrovin_violation(ctx: CheckContext) -> List[CheckResult]:
    try:
        check_hypothesis(ctx.scenario.subring)
    except HypothesisViolation as exc:
        return _result("expect:dubrovin-hypothesis-violation", True, str(exc))
    return _result("expect:dubrovin-hypothesis-violation", False, "hypothesis held")


def expect_dubrovin_witnesses(count: int) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        p = ctx.scenario.subring
        val = ctx.valuation()
        ideal, _ = positives_ideal(p)
        rng = ctx.rng("dubrovin-witnesses")
        done = 0
        attempts = 0
        while done < count:
            attempts += 1
            if attempts > 200 * count:
                return _result(
                    "expect:dubrovin-witnesses", False, witness="no outside elements found"
                )
            x = random_ring_element(p.ring, rng, density=0.8, level_span=3)
            if x.is_zero() or p.contains(x):
                continue
            done += 1
            r, rp = dubrovin_witness(p, val, x)
            for product in (r * x, x * rp):
                if not p.contains(product) or ideal.contains(product):
                    return _result(
                        "expect:dubrovin-witnesses", False, witness=f"failed at {x!r}"
                    )
        return _result("expect:dubrovin-witnesses", True, f"{count} outside elements")

    return run


def expect_min_formula(count: int = 100) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        val = ctx.valuation()
        rng = ctx.rng("min-formula")
        done = 0
        while done < count:
            x = random_ring_element(val.ring, rng, density=0.85, level_span=3)
            if x.is_zero():
                continue
            done += 1
            expected = min(int(sc.valuate(c)) for c in x.coeffs.values())
            if val.offset_of(val.value(x)) != expected:
                return _result("expect:min-formula", False, witness=f"x = {x!r}")
        return _result("expect:min-formula", True, f"{count} random elements")

    return run


def expect_group_value_structure(ctx: CheckContext) -> List[CheckResult]:
    val = ctx.valuation()
    idem = len(val.omega.idempotent_classes())
    return _result(
        "expect:value-structure-is-group", idem == 1, f"idempotent_classes={idem}"
    )


def expect_component_roundtrip(count: int = 50) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        p = ctx.scenario.subring
        reps = component_representatives(p)
        rng = ctx.rng("roundtrip")
        for _ in range(count):
            choice = {nm: rng.randint(0, 6) for nm in reps}
            ideal = extend_component_ideals(p, choice)
            back = restrict_component_ideals(p, ideal)
            if back != choice or extend_component_ideals(p, back) != ideal:
                return _result(
                    "expect:component-ideal-roundtrip", False, witness=str(choice)
                )
        return _result("expect:component-ideal-roundtrip", True, f"{count} draws")

    return run


def expect_relabeled_equivalent(ctx: CheckContext) -> List[CheckResult]:
    val = ctx.valuation()
    report = equivalent(val, RelabeledValuation(val, 2))
    ok = report.equivalent and report.map_consistent
    return _result("expect:relabeled-equivalent", ok, report.detail)


def expect_inequivalent_to(other_name: str) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        other = load_corpus_scenario(other_name)
        val = ctx.valuation()
        other_val = CanonicalValuation(other.subring)
        report = equivalent(val, other_val)
        return _result(
            f"expect:inequivalent-to-{other_name}", not report.equivalent, report.detail
        )

    return run


def expect_twist_exhaustive(pairs: int, triples: int) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        ring = ctx.scenario.ring
        got_pairs = len(list(ring.groupoid.composable_pairs()))
        got_triples = sum(
            1
            for f, g in ring.groupoid.composable_pairs()
            for h in ring.groupoid.elements()
            if ring.groupoid.composable(g, h)
        )
        report = validate_twist(ring.spec, ring.groupoid, ring.twist)
        ok = report.all_pass() and got_pairs == pairs and got_triples == triples
        return _result(
            "expect:twist-exhaustive", ok, f"{got_pairs} pairs, {got_triples} triples"
        )

    return run


def expect_flipped_sign_fails(pair: Tuple[str, str]) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        ring = ctx.scenario.ring
        gpd = ring.groupoid
        key = (gpd.index(pair[0]), gpd.index(pair[1]))
        from .algebra import Twist

        alpha = dict(ring.twist.alpha)
        alpha[key] = sc.neg(alpha[key])
        report = validate_twist(ring.spec, gpd, Twist(alpha, dict(ring.twist.sigma)))
        triple_witness = next((w for w in report.witnesses if "triple" in w), "")
        ok = not report.cocycle and bool(triple_witness)
        return _result(
            "expect:flipped-sign-fails-cocycle", ok, f"flip {pair}", triple_witness
        )

    return run


def expect_products(items: Sequence[Tuple[str, str, str, int]]) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        ring = ctx.scenario.ring
        for a, b, c, sign in items:
            if ring.unit(a) * ring.unit(b) != ring.unit(c, sign):
                return _result(
                    "expect:homogeneous-products", False, witness=f"{a}*{b} != {sign}*{c}"
                )
        return _result("expect:homogeneous-products", True, f"{len(items)} products")

    return run


def expect_graded_inverse(name: str, inverse_name: str, sign: int) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        ring = ctx.scenario.ring
        got = graded_inverse(ring.unit(name))
        ok = got == ring.unit(inverse_name, sign)
        return _result("expect:graded-inverse", ok, f"{name}^-1", "" if ok else repr(got))

    return run


def expect_central_witness(element_name: str) -> Check:
    def run(ctx: CheckContext) -> List[CheckResult]:
        ring = ctx.scenario.ring
        z = ring.central_idempotent_witness()
        expected = ctx.scenario.elements[element_name]
        if z is None or z != expected:
            return _result("expect:central-idempotent-witness", False, witness=repr(z))
        proper = (
            is_central(z)
            and z * z == z
            and not in_central_idempotent_ideal(z, ring.one() - z)
            and not in_central_idempotent_ideal(z, ring.one())
        )
        return _result(
            "expect:central-idempotent-witness", proper, "z central, idempotent, proper"
        )

    return run


def expect_order_report(ctx: CheckContext) -> List[CheckResult]:
    report = validate_order(ctx.scenario.order)
    ok = report.all_pass()
    return _result(
        "expect:order-all-pass",
        ok,
        f"partial_order={report.partial_order} compatible={report.compatible} ordered={report.ordered}",
    )


def expect_mutated_orders(ctx: CheckContext) -> List[CheckResult]:
    gpd = ctx.scenario.ring.groupoid
    bare = validate_order(GroupoidOrder(gpd, []))
    gap = validate_order(GroupoidOrder(gpd, [("e12", "e11")]))
    ok = (
        bare.partial_order
        and not bare.ordered
        and not gap.compatible
        and any("compatibility" in w for w in gap.witnesses)
    )
    return _result(
        "expect:mutated-orders-detected",
        ok,
        f"reflexive-only ordered={bare.ordered}; gapped compatible={gap.compatible}",
    )


def expect_triangular_recovery(ctx: CheckContext) -> List[CheckResult]:
    ring = ctx.scenario.ring
    val = OrderValuation(ring, ctx.scenario.order)
    upper = BoundPattern(ring, {"e11": 0, "e12": NEG_INF, "e21": POS_INF, "e22": 0})
    lower = BoundPattern(ring, {"e11": 0, "e12": POS_INF, "e21": NEG_INF, "e22": 0})
    t, s = val.ring_from_targets(), val.ring_from_sources()
    ok = t == upper and s == lower
    return _result(
        "expect:triangular-target-source-rings",
        ok,
        f"T=({t.render()}) S=({s.render()})",
    )


def expect_order_valuation_not_canonical(ctx: CheckContext) -> List[CheckResult]:
    val = OrderValuation(ctx.scenario.ring, ctx.scenario.order)
    checks = {c.name: c for c in check_axioms(val, seed=ctx.seed, radius=3, n_triples=200)}
    ok = (
        checks["infinity-only-at-zero"].ok
        and checks["sum-dominates-common-bound"].ok
        and checks["homogeneous-multiplicativity"].ok
        and not checks["canonical-two-sided"].ok
    )
    return _result(
        "expect:order-valuation-not-canonical",
        ok,
        "axioms (1)-(3) hold, two-sidedness fails",
        checks["canonical-two-sided"].witness,
    )


def expect_skewfield(ctx: CheckContext) -> List[CheckResult]:
    return _result("expect:skewfield", ctx.scenario.ring.is_skewfield())


def expect_whole_ring_pattern(ctx: CheckContext) -> List[CheckResult]:
    p = ctx.scenario.subring
    ok = all(p.bound(g) == 0 for g in p.ring.groupoid.elements()) and is_valuation_ring(p)
    return _result("expect:whole-ring-is-valuation-ring", ok, p.render())


REPRODUCE: Dict[str, Tuple[Check, ...]] = {
    "gvalex": (
        expect_total_stable,
        expect_ideals_incomparable,
        expect_unit_pair_ideal_not_cyclic,
        expect_positives_bounds({"e11": 1, "e12": NEG_INF, "e21": POS_INF, "e22": 1}),
        expect_residue(("e11", "e22"), False),
        expect_dubrovin_violation,
    ),
    "triangular-valuation": (
        expect_order_report,
        expect_triangular_recovery,
        expect_order_valuation_not_canonical,
    ),
    "m2-full": (
        expect_total_stable,
        expect_min_formula(100),
        expect_group_value_structure,
        expect_residue(("e11", "e12", "e21", "e22"), True),
        expect_component_roundtrip(50),
        expect_relabeled_equivalent,
        expect_inequivalent_to("gvalex"),
        expect_dubrovin_witnesses(10),
    ),
    "quaternion": (
        expect_twist_exhaustive(16, 64),
        expect_flipped_sign_fails(("j", "i")),
        expect_products([("i", "j", "k", 1), ("j", "i", "k", -1)]),
        expect_graded_inverse("i", "i", -1),
        expect_total_stable,
        expect_group_value_structure,
        expect_residue(("1", "i", "j", "k"), True),
    ),
    "quaternion-matrix": (
        expect_skewfield,
        expect_total_stable,
        expect_group_value_structure,
    ),
    "twisted-sqrt": (
        expect_skewfield,
        expect_whole_ring_pattern,
        expect_residue(("e11", "e12", "e21", "e22"), True),
    ),
    "gsimple-not-simple": (
        expect_skewfield,
        expect_central_witness("splitter"),
    ),
    "delta2-order": (
        expect_order_report,
        expect_mutated_orders,
    ),
}


# -- reports ---------------------------------------------------------------------


@dataclass
class Report:
    scenario: str
    seed: int
    radius: int
    checks: List[CheckResult]
    elapsed: Optional[float] = None

    def counts(self) -> Dict[str, int]:
        out = {PASS: 0, FAIL: 0, SKIP: 0, ERROR: 0}
        for c in self.checks:
            out[c.status] += 1
        return out

    def ok(self) -> bool:
        counts = self.counts()
        return counts[FAIL] == 0 and counts[ERROR] == 0

    def exit_code(self) -> int:
        return 0 if self.ok() else 2

    def to_dict(self, include_timing: bool = False) -> dict:
        data = {
            "schema": 1,
            "tool": "gradval",
            "version": __version__,
            "scenario": self.scenario,
            "seed": self.seed,
            "window": [-self.radius, self.radius],
            "checks": [
                {
                    "name": c.name,
                    "status": c.status,
                    "detail": c.detail,
                    "witness": c.witness,
                }
                for c in self.checks
            ],
            "summary": self.counts(),
        }
        if include_timing and self.elapsed is not None:
            data["timing_seconds"] = round(self.elapsed, 3)
        return data

    def to_text(self) -> str:
        lines = [f"scenario {self.scenario} (seed {self.seed}, window +-{self.radius})"]
        for c in self.checks:
            line = f"  [{c.status:>7}] {c.name}"
            if c.detail:
                line += f"  -- {c.detail}"
            if c.witness:
                line += f"  !! {c.witness}"
            lines.append(line)
        counts = self.counts()
        lines.append(
            f"  summary: {counts[PASS]} pass, {counts[FAIL]} fail, "
            f"{counts[SKIP]} skipped, {counts[ERROR]} error"
        )
        return "\n".join(lines)


def run_checks(
    scenario: Scenario,
    seed: int = 0,
    radius: int = 6,
    extra: Sequence[Check] = (),
    only: Optional[Sequence[str]] = None,
) -> Report:
    ctx = CheckContext(scenario, seed, radius)
    start = time.monotonic()
    results: List[CheckResult] = []
    for check in list(GENERIC_CHECKS) + list(extra):
        try:
            results.extend(check(ctx))
        except GradvalError as exc:
            results.append(CheckResult(check.__name__, ERROR, "", str(exc)))
    if only is not None:
        wanted = set(only)
        results = [c for c in results if c.name in wanted]
    return Report(scenario.id, seed, radius, results, time.monotonic() - start)


def reproduce(name: str, seed: int = 0, radius: int = 6) -> Report:
    if name not in REPRODUCE:
        raise UnknownExample(
            f"unknown example {name!r}; choose from {', '.join(sorted(REPRODUCE))}"
        )
    scenario = load_corpus_scenario(name)
    return run_checks(scenario, seed=seed, radius=radius, extra=REPRODUCE[name])
