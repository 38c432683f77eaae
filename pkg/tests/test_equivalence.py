import itertools
from fractions import Fraction

import pytest

from scorepower import (
    RuleMapping,
    ScoringCommittee,
    SearchBoundError,
    ShapeError,
    WeightGrid,
    canonical_mapping,
    class_count_sweep,
    count_classes,
    enumerate_classes,
    equivalent,
    minimal_reference_weights,
    rule_mapping,
    structurally_equivalent,
)
from scorepower.equivalence import attach_minimal_references
from conftest import committee, random_committee

S_HALF = Fraction(1, 2)


class TestEquivalent:
    def test_scaling(self):
        assert equivalent(committee((5, 4, 3), s=S_HALF), committee((10, 8, 6), s=S_HALF))

    def test_affine_scoring(self):
        assert equivalent(
            committee((5, 4, 3), scores=(2, 1, 0)), committee((5, 4, 3), s=S_HALF)
        )

    def test_not_equivalent(self):
        assert not equivalent(committee((5, 4, 3), s=0), committee((1, 1, 1), s=0))

    def test_reflexive(self, rng):
        for _ in range(5):
            c = random_committee(rng)
            assert equivalent(c, c)

    def test_shape_mismatch(self):
        with pytest.raises(ShapeError):
            equivalent(committee((5, 4, 3), s=0), committee((5, 4, 3, 1), s=0))
        with pytest.raises(ShapeError):
            equivalent(committee((5, 4, 3), s=0), committee((5, 4, 3), s=1))


class TestStructuralEquivalence:
    def test_reversed_weights(self):
        for s in (0, S_HALF, 1):
            assert structurally_equivalent(
                committee((5, 4, 3, 1), s=s), committee((1, 3, 4, 5), s=s)
            )

    def test_relabeled_but_not_equivalent(self):
        c1 = committee((5, 4, 3), s=0)
        c2 = committee((3, 5, 4), s=0)
        assert not equivalent(c1, c2)
        assert structurally_equivalent(c1, c2)

    def test_distinct_classes(self):
        assert not structurally_equivalent(
            committee((1, 0, 0), s=0), committee((1, 1, 1), s=0)
        )

    def test_equivalent_implies_structural(self, rng):
        for _ in range(5):
            c = random_committee(rng)
            scaled = ScoringCommittee(tuple(2 * w for w in c.weights), c.scoring)
            assert structurally_equivalent(c, scaled)

    def test_transitive_on_keys(self):
        # keys are values, so structural equivalence is transitive by construction
        k1 = canonical_mapping(rule_mapping(committee((6, 5, 3), s=S_HALF)))
        k2 = canonical_mapping(rule_mapping(committee((3, 5, 6), s=S_HALF)))
        k3 = canonical_mapping(rule_mapping(committee((12, 10, 6), s=S_HALF)))
        assert k1 == k2 == k3


class TestCanonicalMapping:
    def test_idempotent(self):
        mapping = rule_mapping(committee((5, 4, 3), s=S_HALF))
        canon = canonical_mapping(mapping)
        again = canonical_mapping(RuleMapping(canon.key, canon.n, canon.m))
        assert again == canon

    def test_is_minimum_over_relabelings(self):
        weights = (6, 5, 3)
        canon = canonical_mapping(rule_mapping(committee(weights, s=S_HALF)))
        tables = [
            rule_mapping(
                committee(tuple(weights[i] for i in perm), s=S_HALF)
            ).winners
            for perm in itertools.permutations(range(3))
        ]
        assert canon.key == min(tables)
        assert canon.key in tables


class TestMinimalReferences:
    @pytest.mark.parametrize(
        "weights,s,expected",
        [
            ((5, 1, 1), 0, (1, 0, 0)),
            ((2, 2, 2), 0, (1, 1, 1)),
            ((4, 2, 2), 0, (2, 1, 1)),
            ((6, 5, 3), S_HALF, (6, 5, 3)),
        ],
    )
    def test_known_references(self, weights, s, expected):
        assert minimal_reference_weights(committee(weights, s=s)) == expected

    def test_fractional_weights(self):
        c = committee((Fraction(1, 2), Fraction(1, 4), Fraction(1, 4)), s=0)
        assert minimal_reference_weights(c) == (2, 1, 1)

    def test_bound_exceeded(self):
        with pytest.raises(SearchBoundError):
            minimal_reference_weights(committee((2, 1, 1), s=0), max_sum=3)

    def test_requires_three_by_three(self):
        with pytest.raises(ShapeError):
            minimal_reference_weights(committee((5, 4, 3, 1), s=0))


class TestEnumerateClasses:
    def test_plurality_classes_small_grid(self):
        grid = WeightGrid(60)
        class_set = enumerate_classes(Fraction(0), grid)
        assert len(class_set) == 6
        attach_minimal_references(class_set)
        refs = {c.minimal_reference for c in class_set.classes}
        assert refs == {
            (1, 0, 0),
            (1, 1, 0),
            (1, 1, 1),
            (2, 1, 1),
            (2, 2, 1),
            (3, 2, 2),
        }

    def test_grid_counts_partition_the_grid(self):
        grid = WeightGrid(60)
        class_set = enumerate_classes(Fraction(0), grid)
        assert sum(c.grid_count for c in class_set.classes) == grid.size

    def test_representatives_live_in_their_class(self):
        class_set = enumerate_classes(Fraction(1), WeightGrid(60))
        attach_minimal_references(class_set)
        for cls in class_set.classes:
            assert cls.minimal_reference is not None
            rep = committee(cls.representative, s=1)
            ref = committee(cls.minimal_reference, s=1)
            assert structurally_equivalent(rep, ref)

    def test_off_grid_point_classes_are_found(self):
        # (6, 4, 1)/11 and (6, 5, 2)/13 are single points at s = 1/2 that no
        # multiple-of-2520 grid contains; the exact layer must still list them
        grid = WeightGrid(60)
        class_set = enumerate_classes(S_HALF, grid, exact=True)
        assert len(class_set) == 51
        zero_count = [c for c in class_set.classes if c.grid_count == 0]
        assert zero_count  # some classes exist only off-grid
        grid_only = enumerate_classes(S_HALF, grid, exact=False)
        assert len(grid_only) < 51

    def test_keys_are_unique(self):
        class_set = enumerate_classes(Fraction(1), WeightGrid(60))
        keys = [c.key for c in class_set.classes]
        assert len(keys) == len(set(keys))


class TestCounts:
    @pytest.mark.parametrize("s,expected", [(Fraction(0), 6), (Fraction(1), 5), (S_HALF, 51)])
    def test_exact_counts(self, s, expected):
        assert count_classes(s) == expected

    def test_grid_only_count(self):
        assert count_classes(Fraction(0), WeightGrid(60), exact=False) == 6

    def test_sweep_preserves_order(self):
        values = [Fraction(0), Fraction(1), S_HALF]
        counts = class_count_sweep(values)
        assert [s for s, _ in counts] == values
        assert [c for _, c in counts] == [6, 5, 51]
