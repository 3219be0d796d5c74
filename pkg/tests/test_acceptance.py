"""Acceptance suite: one test per criterion, exact comparisons throughout.

Each test prints a single PASS line on success; a failure surfaces through
the assertion itself.  Run with ``pytest tests/test_acceptance.py -v`` (or
``-s`` to see the lines as they print).
"""

import random
import time

import pytest

from gradval import scalars as sc
from gradval.algebra import Twist, validate_twist
from gradval.bounds import POS_INF
from gradval.dubrovin import check_hypothesis, dubrovin_witness
from gradval.errors import HypothesisViolation
from gradval.groupoids import is_connected
from gradval.omega import ValueGroupoid
from gradval.patterns import (
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
    positives_ideal,
    residue_ring,
    restrict_component_ideals,
)
from gradval.scenario import corpus_names, load_corpus_scenario
from gradval.valuation import (
    CanonicalValuation,
    MutatedValuation,
    RelabeledValuation,
    check_axioms,
    equivalent,
    positives_agree,
    random_ring_element,
)

from support import oracle_groupoid_rings, random_subring_pattern

WINDOW = 6


def conclude(number: int, text: str) -> None:
    print(f"ACCEPTANCE {number:2d} PASS: {text}")


def valuation_ring_scenarios():
    out = []
    for name in corpus_names():
        s = load_corpus_scenario(name)
        if s.subring is not None and is_valuation_ring(s.subring):
            out.append(s)
    return out


def test_criterion_01_gvalex_reproduction():
    start = time.monotonic()
    s = load_corpus_scenario("gvalex")
    p = s.subring
    assert is_total(p) and is_stable(p)
    rel_ij = compare_ideals(s.ideals["I"], s.ideals["J"], parent=p)
    rel_ji = compare_ideals(s.ideals["J"], s.ideals["I"], parent=p)
    assert rel_ij.relation == "incomparable" and rel_ji.relation == "incomparable"
    gens = [p.ring.unit(e) for e in p.ring.groupoid.idempotents]
    ideal = generated_ideal(p, gens, "two_sided")
    assert cyclic_generator(p, ideal, "two_sided", radius=WINDOW) is None
    elapsed = time.monotonic() - start
    assert elapsed < 5.0
    conclude(1, f"gvalex: total, stable, I||J, unit-pair ideal acyclic ({elapsed:.2f}s)")


def test_criterion_02_valuation_recovery():
    start = time.monotonic()
    scenarios = valuation_ring_scenarios()
    assert len(scenarios) >= 5
    for s in scenarios:
        val = CanonicalValuation(s.subring)
        assert val.ring_from_targets() == s.subring == val.ring_from_sources(), s.id
    elapsed = time.monotonic() - start
    assert elapsed < 10.0
    conclude(2, f"T = R = S on {len(scenarios)} scenarios ({elapsed:.2f}s)")


def test_criterion_03_min_formula():
    s = load_corpus_scenario("m2-full")
    val = CanonicalValuation(s.subring)
    rng = random.Random(303)
    done = 0
    while done < 100:
        x = random_ring_element(val.ring, rng, density=0.85, level_span=3)
        if x.is_zero():
            continue
        done += 1
        expected = min(int(sc.valuate(c)) for c in x.coeffs.values())
        assert val.offset_of(val.value(x)) == expected, repr(x)
    conclude(3, "value of 100 random matrices equals min entry valuation under Gamma ~ Z")


def test_criterion_04_axiom_suite():
    for s in valuation_ring_scenarios():
        val = CanonicalValuation(s.subring)
        for chk in check_axioms(val, seed=4, radius=WINDOW, n_triples=1000):
            assert chk.ok, (s.id, chk.name, chk.witness)

    # fault 1: drop one comparability from the unit-class order
    base = CanonicalValuation(load_corpus_scenario("m2-full").subring)
    e11 = base.ring.groupoid.index("e11")
    mutated = MutatedValuation(base, base.omega.canon(e11, 1), base.omega.canon(e11, 0))
    pi = sc.scalar(base.ring.spec, 5)
    crafted = [
        (
            base.ring.unit("e11"),
            base.ring.unit("e11", sc.sub(pi, sc.one(base.ring.spec))),
            base.ring.unit("e11"),
        )
    ]
    results = {
        c.name: c
        for c in check_axioms(mutated, seed=4, radius=2, n_triples=100, extra_triples=crafted)
    }
    broken = results["sum-dominates-common-bound"]
    assert not broken.ok and broken.witness

    # fault 2: flip one twist sign and watch the cocycle condition fail
    s = load_corpus_scenario("quaternion")
    g = s.ring.groupoid
    alpha = dict(s.ring.twist.alpha)
    key = (g.index("j"), g.index("i"))
    alpha[key] = sc.neg(alpha[key])
    report = validate_twist(s.ring.spec, g, Twist(alpha, dict(s.ring.twist.sigma)))
    assert not report.cocycle
    assert any("triple" in w for w in report.witnesses)
    conclude(4, "axioms (1)-(4) hold on every scenario; both fault injections witnessed")


def test_criterion_05_positives_corollary():
    for s in valuation_ring_scenarios():
        val = CanonicalValuation(s.subring)
        ok, witness = positives_agree(val, s.subring, radius=WINDOW)
        assert ok, (s.id, witness)
    conclude(5, "non-invertible members = members above their unit value, all scenarios")


def test_criterion_06_residue():
    total_scenarios = [
        s
        for s in (load_corpus_scenario(nm) for nm in corpus_names())
        if s.subring is not None and is_total(s.subring)
    ]
    assert total_scenarios
    for s in total_scenarios:
        res = residue_ring(s.subring)
        assert res.ring.is_skewfield(), s.id
        if s.id == "m2-full":
            assert res.support_names == ("e11", "e12", "e21", "e22")
            assert res.ring.spec == sc.FieldSpec(sc.PRIME, prime=5)
            assert res.simple_artinian
        if s.id == "gvalex":
            assert res.support_names == ("e11", "e22")
    conclude(6, f"residue rings are graded skewfields on {len(total_scenarios)} scenarios")


def test_criterion_07_dubrovin():
    start = time.monotonic()
    for name, seed in (("m2-full", 7), ("m3-full", 77)):
        s = load_corpus_scenario(name)
        p = s.subring
        val = CanonicalValuation(p)
        ideal, _ = positives_ideal(p)
        check_hypothesis(p)
        assert residue_ring(p).simple_artinian
        rng = random.Random(seed)
        done = 0
        while done < 50:
            x = random_ring_element(p.ring, rng, density=0.8, level_span=3)
            if x.is_zero() or p.contains(x):
                continue
            done += 1
            r, rp = dubrovin_witness(p, val, x)
            for product in (r * x, x * rp):
                assert p.contains(product) and not ideal.contains(product), (name, repr(x))
    with pytest.raises(HypothesisViolation):
        check_hypothesis(load_corpus_scenario("gvalex").subring)
    elapsed = time.monotonic() - start
    assert elapsed < 30.0
    conclude(7, f"Dubrovin checks on m2-full and m3-full, 50 witnesses each ({elapsed:.2f}s)")


def test_criterion_08_oracle_equivalence():
    disagreements = 0
    for label, ring in oracle_groupoid_rings():
        rng = random.Random(f"acceptance:{label}")
        for _ in range(200):
            p = random_subring_pattern(ring, rng)
            if is_total(p) != oracle_is_total(p, WINDOW)[0]:
                disagreements += 1
            if is_stable(p) != oracle_is_stable(p, WINDOW)[0]:
                disagreements += 1
    assert disagreements == 0
    conclude(8, "closed forms match the literal window scans on 200 patterns x 4 groupoids")


def test_criterion_09_group_value_structure():
    qualifying = []
    for s in valuation_ring_scenarios():
        full = all(s.subring.bound(g) != POS_INF for g in s.ring.groupoid.elements())
        if full and is_connected(s.ring.groupoid):
            qualifying.append(s)
    assert qualifying
    for s in qualifying:
        omega = ValueGroupoid(s.subring)
        assert len(omega.idempotent_classes()) == 1, s.id
    conclude(9, f"one idempotent class on {len(qualifying)} full-support connected scenarios")


def test_criterion_10_equivalence():
    m2 = CanonicalValuation(load_corpus_scenario("m2-full").subring)
    relabeled = RelabeledValuation(m2, 2)
    report = equivalent(m2, relabeled)
    assert report.equivalent and report.map_consistent
    gval = CanonicalValuation(load_corpus_scenario("gvalex").subring)
    assert not equivalent(m2, gval).equivalent
    conclude(10, "relabeled valuation equivalent; full vs triangular valuations are not")


def test_criterion_11_twist_validation():
    s = load_corpus_scenario("quaternion")
    ring = s.ring
    pairs = list(ring.groupoid.composable_pairs())
    triples = [
        (f, g, h)
        for f, g in pairs
        for h in ring.groupoid.elements()
        if ring.groupoid.composable(g, h)
    ]
    assert len(pairs) == 16 and len(triples) == 64
    assert validate_twist(ring.spec, ring.groupoid, ring.twist).all_pass()
    alpha = dict(ring.twist.alpha)
    key = (ring.groupoid.index("j"), ring.groupoid.index("i"))
    alpha[key] = sc.neg(alpha[key])
    report = validate_twist(ring.spec, ring.groupoid, Twist(alpha, dict(ring.twist.sigma)))
    assert not report.cocycle
    witness = next(w for w in report.witnesses if "triple" in w)
    assert witness
    conclude(11, f"quaternion cocycle exhaustive over 16 pairs / 64 triples; mutation caught ({witness})")


def test_criterion_12_component_ideal_roundtrip():
    s = load_corpus_scenario("m2-full")
    p = s.subring
    reps = component_representatives(p)
    rng = random.Random(12)
    for _ in range(50):
        choice = {nm: rng.randint(0, 6) for nm in reps}
        ideal = extend_component_ideals(p, choice)
        assert restrict_component_ideals(p, ideal) == choice
        assert extend_component_ideals(p, restrict_component_ideals(p, ideal)) == ideal
    conclude(12, "extend/restrict identities on 50 random component ideals over m2-full")
