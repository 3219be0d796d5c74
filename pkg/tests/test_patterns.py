import random
from fractions import Fraction

import pytest

from gradval import scalars as sc
from gradval.algebra import GradedElement
from gradval.bounds import NEG_INF, POS_INF
from gradval.errors import (
    KindMismatch,
    LengthViolation,
    NotMember,
    NotStrong,
    NotTotal,
)
from gradval.patterns import (
    BoundPattern,
    EQUAL,
    INCOMPARABLE,
    SUBSET,
    SUPERSET,
    TWO_SIDED_IDEAL,
    compare_ideals,
    component_representatives,
    cyclic_generator,
    extend_component_ideals,
    generated_ideal,
    graded_jacobson_radical,
    is_stable,
    is_strongly_graded_pattern,
    is_total,
    is_valuation_ring,
    oracle_is_stable,
    oracle_is_total,
    oracle_noninvertible_levels,
    positives_ideal,
    residue_ring,
    restrict_component_ideals,
    validate_pattern,
)
from gradval.scalars import FieldSpec

from support import (
    Q,
    Q5,
    full_pattern,
    gvalex_pattern,
    matrix_ring,
    oracle_groupoid_rings,
    quaternion_ring,
    random_element,
    random_subring_pattern,
)


class TestValidation:
    def test_m2_full_passes(self):
        assert validate_pattern(full_pattern(matrix_ring(2, Q5))).ok

    def test_gvalex_passes(self):
        assert validate_pattern(gvalex_pattern()).ok

    def test_closure_violation_witnessed(self):
        ring = matrix_ring(2, Q5)
        p = BoundPattern(ring, {"e11": 0, "e12": -1, "e21": -1, "e22": 0})
        report = validate_pattern(p)
        assert not report.ok
        assert any("closure" in w for w in report.witnesses)

    def test_unit_bound_violation(self):
        ring = matrix_ring(2, Q5)
        p = BoundPattern(ring, {"e11": 1, "e12": 0, "e21": 0, "e22": 0})
        assert any("unit bound" in w for w in validate_pattern(p).witnesses)

    def test_trivial_valuation_collapses_bounds(self):
        ring = matrix_ring(2, Q)
        p = BoundPattern(ring, {"e11": -4, "e12": NEG_INF, "e21": 3, "e22": 0})
        assert p.bound(ring.groupoid.index("e11")) == 0
        assert p.bound(ring.groupoid.index("e12")) == 0
        assert p.bound(ring.groupoid.index("e21")) == POS_INF


class TestTotalStable:
    def test_gvalex(self):
        p = gvalex_pattern()
        assert is_total(p) and is_stable(p) and is_valuation_ring(p)

    def test_m2_full(self):
        p = full_pattern(matrix_ring(2, Q5))
        assert is_total(p) and is_stable(p)

    def test_unbalanced_diagonal_not_stable(self):
        ring = matrix_ring(2, Q5)
        p = BoundPattern(ring, {"e11": 0, "e12": 0, "e21": 0, "e22": 1})
        assert not is_stable(p)
        ok, witness = oracle_is_stable(p)
        assert not ok and witness

    def test_kind_mismatch(self):
        p = full_pattern(matrix_ring(2, Q5)).with_kind(TWO_SIDED_IDEAL)
        with pytest.raises(KindMismatch):
            is_total(p)

    @pytest.mark.parametrize("label,ring", oracle_groupoid_rings())
    def test_closed_forms_agree_with_oracle(self, label, ring):
        rng = random.Random(hash(label) & 0xFFFF)
        for _ in range(30):
            p = random_subring_pattern(ring, rng)
            assert is_total(p) == oracle_is_total(p)[0], p.render()
            assert is_stable(p) == oracle_is_stable(p)[0], p.render()

    def test_quaternion_unit_pattern(self):
        ring = quaternion_ring(Q5)
        p = full_pattern(ring)
        assert is_valuation_ring(p)
        assert oracle_is_total(p)[0] and oracle_is_stable(p)[0]


def gvalex_ideal_i():
    p = gvalex_pattern()
    return BoundPattern(
        p.ring, {"e11": 1, "e12": NEG_INF, "e21": POS_INF, "e22": 0}, TWO_SIDED_IDEAL
    )


def gvalex_ideal_j():
    p = gvalex_pattern()
    return BoundPattern(
        p.ring, {"e11": 0, "e12": NEG_INF, "e21": POS_INF, "e22": 1}, TWO_SIDED_IDEAL
    )


class TestIdealCompare:
    def test_gvalex_incomparable(self):
        p = gvalex_pattern()
        result = compare_ideals(gvalex_ideal_i(), gvalex_ideal_j(), parent=p)
        assert result.relation == INCOMPARABLE
        assert len(result.witnesses) == 2

    def test_equal(self):
        result = compare_ideals(gvalex_ideal_i(), gvalex_ideal_i())
        assert result.relation == EQUAL

    def test_componentwise_subset(self):
        ring = matrix_ring(2, Q5)
        one = full_pattern(ring, 1).with_kind(TWO_SIDED_IDEAL)
        two = full_pattern(ring, 2).with_kind(TWO_SIDED_IDEAL)
        assert compare_ideals(two, one).relation == SUBSET
        assert compare_ideals(one, two).relation == SUPERSET


class TestGeneratedIdeals:
    def test_gvalex_idempotent_pair_not_cyclic(self):
        p = gvalex_pattern()
        gens = [p.ring.unit("e11"), p.ring.unit("e22")]
        ideal = generated_ideal(p, gens, "two_sided")
        # the ideal is the whole pattern, yet no single window generator works
        assert ideal == p.with_kind(TWO_SIDED_IDEAL)
        assert cyclic_generator(p, ideal, "two_sided", radius=6) is None

    def test_m2_same_target_left_ideal_cyclic(self):
        p = full_pattern(matrix_ring(2, Q5))
        gens = [p.ring.unit("e11"), p.ring.unit("e21")]
        ideal = generated_ideal(p, gens, "left")
        gen = cyclic_generator(p, ideal, "left", radius=6)
        assert gen is not None
        assert generated_ideal(p, [gen], "left") == ideal

    def test_unit_sum_generates_whole_ring(self):
        p = full_pattern(matrix_ring(2, Q5))
        gens = [p.ring.unit("e11"), p.ring.unit("e22")]
        assert generated_ideal(p, gens, "two_sided") == p.with_kind(TWO_SIDED_IDEAL)

    def test_generator_outside_rejected(self):
        p = gvalex_pattern()
        with pytest.raises(NotMember):
            generated_ideal(p, [p.ring.unit("e21")], "two_sided")

    def test_one_sided_closures_can_but_need_not_agree(self):
        # left multiplication escapes a right ideal only through components
        # that survive on the relevant row; for the triangular pattern the
        # e11 generator is safe while the e22 generator is not
        p = gvalex_pattern()
        safe = generated_ideal(p, [p.ring.unit("e11")], "right")
        assert safe.bounds_by_name() == generated_ideal(
            p, [p.ring.unit("e11")], "two_sided"
        ).bounds_by_name()
        leaky = generated_ideal(p, [p.ring.unit("e22", 5)], "right")
        two = generated_ideal(p, [p.ring.unit("e22", 5)], "two_sided")
        assert leaky.bounds_by_name() != two.bounds_by_name()
        assert not validate_pattern(leaky.with_kind(TWO_SIDED_IDEAL), ambient=p).ok

    def test_full_matrix_row_ideal_is_right_not_left(self):
        # the row ideal of a full matrix pattern is the classical
        # counterexample: right closure keeps the row, the two-sided
        # closure fills every component
        p = full_pattern(matrix_ring(2, Q5))
        h = p.ring.unit("e11")
        right = generated_ideal(p, [h], "right")
        assert right.bounds_by_name() == {"e11": 0, "e12": 0, "e21": POS_INF, "e22": POS_INF}
        report = validate_pattern(right, ambient=p)
        assert report.ok  # as a right ideal
        two = generated_ideal(p, [h], "two_sided")
        assert set(two.bounds_by_name().values()) == {0}
        assert right.bounds_by_name() != two.bounds_by_name()

    def test_membership_closure_random_pairs(self):
        rng = random.Random(41)
        for p in (full_pattern(matrix_ring(2, Q5)), gvalex_pattern(), full_pattern(quaternion_ring(Q5))):
            members = []
            while len(members) < 40:
                x = random_element(p.ring, rng)
                scalefix = GradedElement(
                    p.ring,
                    {
                        g: sc.mul(c, sc.scalar_of_value(p.ring.spec, max(0, int(p.bound(g)) if p.bound(g) != NEG_INF and p.bound(g) != POS_INF else 0)))
                        for g, c in x.coeffs.items()
                        if p.bound(g) != POS_INF
                    },
                )
                if p.contains(scalefix) and not scalefix.is_zero():
                    members.append(scalefix)
            for a, b in zip(members[::2], members[1::2]):
                assert p.contains(a + b)
                assert p.contains(a * b)


class TestPositives:
    def test_gvalex(self):
        p = gvalex_pattern()
        ideal, raw = positives_ideal(p)
        assert raw == {"e11": 1, "e12": NEG_INF, "e21": POS_INF, "e22": 1}
        assert ideal == BoundPattern(
            p.ring, {"e11": 1, "e12": NEG_INF, "e21": POS_INF, "e22": 1}, TWO_SIDED_IDEAL
        )

    def test_m2_full(self):
        p = full_pattern(matrix_ring(2, Q5))
        ideal, raw = positives_ideal(p)
        assert set(raw.values()) == {1}

    def test_whole_ring_has_zero_ideal(self):
        ring = matrix_ring(2, Q5)
        p = BoundPattern(ring, {g: NEG_INF for g in ring.groupoid.elements()})
        ideal, raw = positives_ideal(p)
        assert set(raw.values()) == {POS_INF}

    def test_requires_total(self):
        ring = matrix_ring(2, Q5)
        p = BoundPattern(ring, {"e11": 0, "e12": 2, "e21": POS_INF, "e22": 0})
        with pytest.raises(NotTotal):
            positives_ideal(p)

    @pytest.mark.parametrize("pattern_builder", [lambda: gvalex_pattern(), lambda: full_pattern(matrix_ring(2, Q5)), lambda: full_pattern(quaternion_ring(Q5))])
    def test_generator_levels_match_brute_force(self, pattern_builder):
        p = pattern_builder()
        from gradval.patterns import _positive_start

        start = _positive_start(p)
        for g in p.ring.groupoid.elements():
            scanned = oracle_noninvertible_levels(p, g, radius=6)
            expected = start[g]
            if expected == POS_INF:
                assert scanned == []
            elif expected == NEG_INF:
                assert scanned == list(range(-6, 7))
            else:
                assert scanned == [m for m in range(-6, 7) if m >= expected]


class TestResidue:
    def test_m2_residue_is_full_matrix_ring_mod_5(self):
        p = full_pattern(matrix_ring(2, Q5))
        res = residue_ring(p)
        assert res.support_names == ("e11", "e12", "e21", "e22")
        assert res.simple_artinian
        assert res.ring.spec == FieldSpec(sc.PRIME, prime=5)
        assert res.ring.is_skewfield()

    def test_m2_reduce_matrix(self):
        p = full_pattern(matrix_ring(2, Q5))
        res = residue_ring(p)
        x = (
            p.ring.unit("e11", Fraction(7, 3))
            + p.ring.unit("e12", 5)
            + p.ring.unit("e21", 25)
            + p.ring.unit("e22", 2)
        )
        image = res.reduce(x)
        assert image == res.ring.unit("e11", 4) + res.ring.unit("e22", 2)

    def test_gvalex_residue_disconnected(self):
        res = residue_ring(gvalex_pattern())
        assert res.support_names == ("e11", "e22")
        assert not res.simple_artinian
        assert res.ring.is_skewfield()

    def test_quaternion_residue_keeps_sign_twist(self):
        p = full_pattern(quaternion_ring(Q5))
        res = residue_ring(p)
        assert len(res.support_names) == 4
        assert res.ring.is_skewfield()
        i = res.ring.unit("i")
        assert (i * i) == res.ring.unit("1", -1)

    def test_trivial_valuation_residue_is_identity(self):
        ring = matrix_ring(2, Q)
        res = residue_ring(full_pattern(ring))
        assert res.support_names == ("e11", "e12", "e21", "e22")
        x = ring.unit("e12", Fraction(3, 7))
        assert res.reduce(x) == res.ring.unit("e12", Fraction(3, 7))

    def test_whole_ring_padic_residue_blows_up(self):
        ring = matrix_ring(2, Q5)
        p = BoundPattern(ring, {g: NEG_INF for g in ring.groupoid.elements()})
        with pytest.raises(LengthViolation):
            residue_ring(p)


class TestStrongGrading:
    def test_m2_is_tight_gvalex_is_not(self):
        assert is_strongly_graded_pattern(full_pattern(matrix_ring(2, Q5)))
        assert not is_strongly_graded_pattern(gvalex_pattern())

    def test_roundtrip_single_component(self):
        p = full_pattern(matrix_ring(2, Q5))
        assert component_representatives(p) == ("e11",)
        ideal = extend_component_ideals(p, {"e11": 2})
        assert set(ideal.bounds_by_name().values()) == {2}
        assert restrict_component_ideals(p, ideal) == {"e11": 2}

    def test_zero_bound_extension_is_whole_pattern(self):
        p = full_pattern(matrix_ring(2, Q5))
        ideal = extend_component_ideals(p, {"e11": 0})
        assert ideal.bounds_by_name() == p.bounds_by_name()

    def test_radical_matches_positives(self):
        p = full_pattern(matrix_ring(2, Q5))
        rad = graded_jacobson_radical(p)
        pos, _ = positives_ideal(p)
        assert rad == pos

    def test_not_strong_rejected(self):
        with pytest.raises(NotStrong):
            extend_component_ideals(gvalex_pattern(), {"e11": 1})

    def test_roundtrip_random(self):
        p = full_pattern(matrix_ring(2, Q5))
        rng = random.Random(53)
        for _ in range(25):
            level = rng.randint(0, 6)
            ideal = extend_component_ideals(p, {"e11": level})
            assert restrict_component_ideals(p, ideal) == {"e11": level}
            again = extend_component_ideals(p, restrict_component_ideals(p, ideal))
            assert again == ideal
