"""
Tests for colour sequences: reduction, kernel structure, insertion, decomposition and runs of equal parts.
"""

import pytest

from colour import SENTINEL, Colour, Metric, all_colours, bound_colours, parse_colour
from sequence import (SITE_DIFFERENCES, NotReducedError, SequenceError, SiteClass, all_sequences, check_reduced,
                      decompose, differences_hold, double_insertion_difference, format_sequence, insert,
                      insertion_difference, is_primary, kernel_structure, left_insertion_type, parse_sequence,
                      predicted_step_insertions, predicted_zero_run_insertions, reduce, reduced_sequences,
                      right_insertion_type, sample_sequences, site_difference, site_neighbours, step_insertions,
                      zero_run_insertions, zero_run_shape, zero_runs)

KERNEL = parse_sequence("a1b2,a2b3,a2b2,a1b4,a3b2,a2b1,a3b3,a2b2")


def assert_reduced(seq):
    check_reduced(seq)
    assert reduce(seq) == tuple(seq)


# ═══════════════════════════════════════════════════════════════════
# Reduction
# ═══════════════════════════════════════════════════════════════════


class TestReduce:
    """The kernel of a colour sequence."""

    def test_worked_example(self):
        seq = parse_sequence("a1b1,a1b2,a2b2,a3b3,a3b1,a1b3,a3b3,a3b3,a3b2,a1b1")
        assert format_sequence(reduce(seq)) == "a1b2,a3b1,a1b3,a3b2,a1b1"

    def test_empty(self):
        assert parse_sequence("") == ()
        assert reduce(()) == ()

    def test_reduce_is_idempotent(self):
        for seq in all_sequences(2, 4):
            assert_reduced(reduce(seq))

    def test_not_reduced_error(self):
        with pytest.raises(NotReducedError) as exc:
            check_reduced(parse_sequence("a1b1,a1b2"))
        assert exc.value.position == 0

    def test_reduced_sequences_are_reduced(self):
        found = reduced_sequences(2, 3)
        assert () in found
        for seq in found:
            assert_reduced(seq)


# ═══════════════════════════════════════════════════════════════════
# Insertion types
# ═══════════════════════════════════════════════════════════════════


class TestInsertionTypes:
    """Left and right insertion types against the raw difference change."""

    def test_known_left_type(self):
        prev, c = parse_sequence("a0b1,a2b0")
        assert left_insertion_type(prev, c) == 1

    def test_left_type_matches_difference(self):
        for prev in all_colours(3):
            for c in bound_colours(3):
                f = parse_sequence(f"a{c.i}b{c.i}")[0]
                assert insertion_difference(prev, f, c) == left_insertion_type(prev, c), (prev, c)

    def test_right_type_matches_difference(self):
        for c in bound_colours(3):
            for nxt in all_colours(3):
                f = parse_sequence(f"a{c.k}b{c.k}")[0]
                assert insertion_difference(c, f, nxt) == right_insertion_type(c, nxt), (c, nxt)


# ═══════════════════════════════════════════════════════════════════
# Kernel structure
# ═══════════════════════════════════════════════════════════════════


class TestKernelStructure:
    """Runs of primary pairs and classified insertion sites."""

    def test_runs_of_example(self):
        ks = kernel_structure(KERNEL)
        assert ks.s == 8
        assert ks.t == 3
        assert len(ks.sites) == ks.s + ks.t
        assert [format_sequence(r) for r in ks.runs()] == ["a1b2,a2b3", "a1b4", "a3b2,a2b1"]

    def test_every_run_has_two_classified_sites(self):
        ks = kernel_structure(KERNEL)
        for t0, t1 in zip(ks.type0_counts(), ks.type1_counts()):
            assert t0 + t1 == 2
        classified = len(ks.sites_of(SiteClass.TYPE0)) + len(ks.sites_of(SiteClass.TYPE1))
        assert classified == 2 * ks.t

    def test_singleton(self):
        ks = kernel_structure(parse_sequence("a1b0"))
        assert (ks.s, ks.t) == (1, 1)
        assert [site.site_class for site in ks.sites] == [SiteClass.TYPE0, SiteClass.TYPE1]
        assert [str(site.free) for site in ks.sites] == ["a1b1", "a0b0"]

    def test_rejects_unreduced(self):
        with pytest.raises(NotReducedError):
            kernel_structure(parse_sequence("a1b0,a0b0"))


class TestInsertDecompose:
    """Expanding a kernel and recovering it."""

    def test_singleton_insert(self):
        seq = insert(parse_sequence("a1b0"), [2, 1])
        assert format_sequence(seq) == "a1b1,a1b1,a1b0,a0b0"
        assert decompose(seq) == (parse_sequence("a1b0"), (2, 1))

    def test_decompose_every_short_sequence(self):
        for seq in all_sequences(2, 4):
            kernel, counts = decompose(seq)
            assert insert(kernel, counts) == seq

    def test_wrong_count_length(self):
        with pytest.raises(SequenceError):
            insert(KERNEL, [0, 1])

    def test_negative_count(self):
        with pytest.raises(SequenceError):
            insert(parse_sequence("a1b0"), [-1, 0])


class TestSampling:
    """Seeded kernel samples."""

    def test_sample_is_seeded_and_ordered(self):
        pool = reduced_sequences(2, 3)
        picked = sample_sequences(pool, 5, seed=1)
        assert picked == sample_sequences(pool, 5, seed=1)
        assert len(set(picked)) == 5
        positions = [pool.index(s) for s in picked]
        assert positions == sorted(positions)

    def test_sample_edges(self):
        pool = reduced_sequences(2, 2)
        assert sample_sequences(pool, len(pool) + 10) == pool
        assert sample_sequences(pool, 0) == []
        assert sample_sequences([], 3) == []


# ═══════════════════════════════════════════════════════════════════
# Insertion sites under delta and delta''
# ═══════════════════════════════════════════════════════════════════


class TestSiteDifferences:
    """Site classes read as difference changes, and delta'' swapping the secondary types."""

    def test_singleton_ends(self):
        ks = kernel_structure(parse_sequence("a1b0"))
        left, right = ks.sites
        assert site_neighbours(ks, left) == (SENTINEL, parse_colour("a1b0"))
        assert site_neighbours(ks, right) == (parse_colour("a1b0"), SENTINEL)
        assert [site_difference(ks, s) for s in ks.sites] == [0, 1]
        assert [site_difference(ks, s, Metric.DELTA_DOUBLE_PRIME) for s in ks.sites] == [1, 0]

    def test_every_site_of_example(self):
        ks = kernel_structure(KERNEL)
        for site in ks.sites:
            for metric, expected in SITE_DIFFERENCES.items():
                assert site_difference(ks, site, metric) == expected[site.site_class], (site, metric)

    def test_primary_pairs_are_neutral(self):
        for c1 in bound_colours(3):
            for c2 in bound_colours(3):
                if is_primary(c1, c2):
                    f = Colour.free(c1.k)
                    assert insertion_difference(c1, f, c2) == 0
                    assert insertion_difference(c1, f, c2, Metric.DELTA_DOUBLE_PRIME) == 0

    def test_secondary_types_swap(self):
        for prev in all_colours(3):
            for c in bound_colours(3):
                if prev.k == c.i:
                    continue
                f = Colour.free(c.i)
                flipped = insertion_difference(prev, f, c, Metric.DELTA_DOUBLE_PRIME)
                assert flipped == 1 - left_insertion_type(prev, c), (prev, c)

    def test_double_insertion_adds_up(self):
        assert double_insertion_difference(parse_colour("a0b1"), parse_colour("a2b0")) == 1
        for c1 in bound_colours(3):
            for c2 in bound_colours(3):
                if c1.k != c2.i:
                    expected = left_insertion_type(c1, c2) + right_insertion_type(c1, c2)
                    assert double_insertion_difference(c1, c2) == expected, (c1, c2)


# ═══════════════════════════════════════════════════════════════════
# Runs of equal parts
# ═══════════════════════════════════════════════════════════════════


class TestZeroRuns:
    """Shapes of zero-difference runs and where free colours fit into them."""

    @pytest.mark.parametrize("text, shape", [
        ("a1b1,a1b1", "1a"),
        ("a1b1,a2b0", "1a"),
        ("a0b2,a1b1", "1b"),
        ("a0b2,a1b1,a1b1,a2b0", "1c"),
        ("a2b1,a3b0", "2a"),
        ("a0b3,a1b2", "2b"),
        ("a0b3,a1b2,a2b1,a3b0", "2c"),
    ])
    def test_shapes(self, text, shape):
        assert zero_run_shape(parse_sequence(text)) == shape

    @pytest.mark.parametrize("text, gap, free", [
        ("a2b1,a3b0", 0, "a2b2"),
        ("a0b3,a1b2", 2, "a2b2"),
        ("a0b3,a1b2,a2b1,a3b0", 2, "a2b2"),
    ])
    def test_insertions_of_examples(self, text, gap, free):
        run = parse_sequence(text)
        assert predicted_zero_run_insertions(run) == {(gap, parse_colour(free))}
        assert zero_run_insertions(run, 4) == {(gap, parse_colour(free))}

    def test_every_short_run_has_a_shape(self):
        runs = zero_runs(3, 4)
        assert parse_sequence("a0b2,a1b1,a2b0") in runs
        for run in runs:
            assert zero_run_shape(run) is not None, format_sequence(run)
            if all(c.is_bound for c in run):
                assert zero_run_insertions(run, 3) == predicted_zero_run_insertions(run), format_sequence(run)

    def test_rejects_non_runs(self):
        with pytest.raises(SequenceError):
            zero_run_shape(parse_sequence("a1b0,a0b0"))
        with pytest.raises(SequenceError):
            zero_run_shape(())
        with pytest.raises(SequenceError):
            predicted_zero_run_insertions(parse_sequence("a1b1"))


class TestStepInsertions:
    """Free colours between (p+1)_{c1} and p_{c2}."""

    def test_upper_then_lower(self):
        c1, c2 = parse_sequence("a0b2,a2b0")
        frees = {parse_colour("a1b1"), parse_colour("a2b2")}
        expected = {(1, f) for f in frees} | {(0, f) for f in frees}
        assert predicted_step_insertions(c1, c2) == expected
        assert step_insertions(c1, c2, 3) == expected

    def test_one_free_at_each_size(self):
        c1, c2 = parse_sequence("a0b2,a2b0")
        parts = [(2, c1), (2, parse_colour("a1b1")), (1, parse_colour("a2b2")), (1, c2)]
        assert differences_hold(parts)

    @pytest.mark.parametrize("text, expected", [
        ("a1b0,a2b0", {(0, "a2b2")}),
        ("a0b2,a0b3", set()),
        ("a1b0,a0b1", set()),
    ])
    def test_examples(self, text, expected):
        c1, c2 = parse_sequence(text)
        assert predicted_step_insertions(c1, c2) == {(lift, parse_colour(f)) for lift, f in expected}
        assert step_insertions(c1, c2, 4) == predicted_step_insertions(c1, c2)

    @pytest.mark.parametrize("p, copies", [(1, 1), (1, 2), (2, 1), (3, 2)])
    def test_every_bound_pair(self, p, copies):
        for c1 in bound_colours(3):
            for c2 in bound_colours(3):
                assert step_insertions(c1, c2, 3, p, copies) == predicted_step_insertions(c1, c2), (c1, c2)
