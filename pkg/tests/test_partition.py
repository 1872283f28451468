"""
Tests for coloured partitions: parsing, statistics, family membership, minimal
partitions, kernel generating functions and enumeration.
"""

import pytest

from colour import ColourError, Metric, Variant, builtin_delta_gamma, parse_colour
from oracles import capparelli_c_counts, partition_numbers, regular_partition_counts
from partition import (ColouredPartition, Family, GfKind, MembershipError, MembershipSpec, PartitionError, count_by_weight,
                       enumerate_partitions, generating_series, is_member, kernel_gf_formula, kernel_of,
                       minimal_partition, minimal_weight_after_insertion, partition_statistics, require_member)
from qseries import Dilation, QSeries, constant_term_product, series_sum
from sequence import insert, kernel_structure, parse_sequence

WEIGHT_44 = "9[a1b0]+8[a0b0]+7[a2b2]+6[a1b1]+6[a1b1]+4[a0b1]+3[a1b2]+1[a0b2]"


def assert_member(text, spec):
    result = is_member(ColouredPartition.parse(text), spec)
    assert result, result.witness


def assert_not_member(text, spec):
    result = is_member(ColouredPartition.parse(text), spec)
    assert not result
    assert result.witness


# ═══════════════════════════════════════════════════════════════════
# Values
# ═══════════════════════════════════════════════════════════════════


class TestColouredPartition:
    """Parsing, validation and serialisation."""

    def test_parse_and_format(self):
        p = ColouredPartition.parse(WEIGHT_44)
        assert p.weight == 44
        assert p.length == 8
        assert str(p) == WEIGHT_44

    @pytest.mark.parametrize("text", ["", "0", "()"])
    def test_empty(self, text):
        p = ColouredPartition.parse(text)
        assert p.weight == 0
        assert not p

    @pytest.mark.parametrize("text", ["3", "3[a1b0", "x[a1b0]", "2[c1d0]"])
    def test_bad_text(self, text):
        with pytest.raises(PartitionError):
            ColouredPartition.parse(text)

    def test_increasing_sizes_rejected(self):
        with pytest.raises(PartitionError):
            ColouredPartition.parse("1[a1b0]+2[a0b1]")

    def test_classical(self):
        p = ColouredPartition.classical([1, 4, 4])
        assert p.sizes == (4, 4, 1)
        assert set(p.colours) == {parse_colour("a0b0")}

    def test_dict_round_trip(self):
        p = ColouredPartition.parse(WEIGHT_44)
        assert ColouredPartition.from_dict(p.to_dict()) == p


class TestStatistics:
    """Colour counts and their monomials."""

    def test_counts(self):
        stats = partition_statistics(ColouredPartition.parse(WEIGHT_44), 3)
        assert stats.u == (3, 4, 1)
        assert stats.v == (2, 3, 3)
        assert stats.bound_u == (2, 2, 0)
        assert stats.bound_v == (1, 1, 2)

    def test_monomial_ignores_free_colours(self):
        stats = partition_statistics(ColouredPartition.parse("3[a1b1]+2[a2b2]"), 3)
        assert stats.monomial().terms == {(0, 0, 0): 1}

    def test_index_outside_alphabet(self):
        with pytest.raises(ColourError):
            partition_statistics(ColouredPartition.parse("1[a2b0]"), 2)


# ═══════════════════════════════════════════════════════════════════
# Membership
# ═══════════════════════════════════════════════════════════════════


class TestMembership:
    """P_n, C_n(delta, gamma), P^0 and the difference variants."""

    def test_weight_44_in_p3(self):
        assert_member(WEIGHT_44, MembershipSpec.pn(3))

    def test_gap_too_small(self):
        assert_not_member("2[a1b0]+2[a0b0]", MembershipSpec.pn(2))

    def test_forbidden_pattern(self, mp3):
        spec = MembershipSpec.cn(mp3)
        assert_member("2[a2b2]+2[a2b0]", spec)
        assert_not_member("3[a1b0]+2[a2b2]+2[a2b0]", spec)

    def test_cn_rejects_a0b0_and_repeats(self, mp2):
        spec = MembershipSpec.cn(mp2)
        assert_not_member("1[a0b0]", spec)
        assert_not_member("2[a1b1]+2[a1b1]", spec)

    def test_p0(self):
        assert_member("4[a0b0]+4[a0b0]+1[a0b0]", MembershipSpec.p0())
        assert_not_member("1[a1b0]", MembershipSpec.p0())

    def test_variant_repeats_free_colour(self):
        spec = MembershipSpec.difference_variant(Variant.MEURMAN_PRIMC, 2)
        assert_not_member("2[a1b1]+2[a1b1]", spec)
        assert_member("3[a1b1]+2[a1b1]", spec)

    def test_require_member(self, mp2):
        with pytest.raises(MembershipError) as exc:
            require_member(ColouredPartition.parse("1[a0b0]"), MembershipSpec.cn(mp2))
        assert exc.value.witness

    def test_spec_needs_table(self):
        with pytest.raises(PartitionError):
            MembershipSpec(Family.CN, 2)

    def test_describe(self, mp3):
        assert MembershipSpec.pn(3).describe() == "P_3"
        assert MembershipSpec.cn(mp3).describe() == "C_3(mp)"


# ═══════════════════════════════════════════════════════════════════
# Minimal partitions and kernels
# ═══════════════════════════════════════════════════════════════════


class TestMinimalPartitions:
    """Least-weight partitions with a given colour sequence."""

    def test_worked_example(self):
        p = minimal_partition(parse_sequence("a2b2,a1b0,a0b2,a1b0,a2b1"))
        assert p.sizes == (5, 4, 2, 2, 1)

    def test_is_member(self):
        seq = parse_sequence("a2b2,a1b0,a0b2,a1b0,a2b1")
        assert is_member(minimal_partition(seq), MembershipSpec.pn(3))

    def test_other_metrics(self):
        seq = parse_sequence("a1b0,a0b0")
        assert minimal_partition(seq, Metric.DELTA_PRIME).sizes == (3, 1)
        assert minimal_partition(seq, Metric.DELTA_DOUBLE_PRIME).sizes == (1, 1)

    def test_kernel(self):
        assert kernel_of(ColouredPartition.parse("4[a0b0]+4[a0b0]")) == parse_sequence("a0b0")

    def test_min_weight_formula(self):
        kernel = parse_sequence("a1b2,a2b0")
        ks = kernel_structure(kernel)
        assert len(ks.sites) == 3
        for counts in ([0, 0, 0], [1, 1, 1], [2, 0, 1], [0, 3, 0]):
            expanded = insert(kernel, counts)
            assert minimal_weight_after_insertion(ks, counts) == minimal_partition(expanded).weight

    @pytest.mark.parametrize("n, weight", [(2, 9), (3, 8)])
    def test_minimal_partition_is_least_weight(self, n, weight):
        least = {}
        for p in enumerate_partitions(MembershipSpec.pn(n), weight):
            seq = tuple(part.colour for part in p.parts)
            least[seq] = min(least.get(seq, p.weight), p.weight)
        for seq, w in least.items():
            assert minimal_partition(seq).weight == w, seq

    def test_min_weight_wrong_length(self):
        with pytest.raises(PartitionError):
            minimal_weight_after_insertion(kernel_structure(parse_sequence("a1b0")), [1])


class TestKernelGeneratingFunctions:
    """Closed forms against enumeration for single kernels."""

    @pytest.mark.parametrize("kernel", ["a1b0", "a0b1", "a1b1", "a0b1,a1b0"])
    def test_delta_form_counts_partitions(self, kernel):
        seq = parse_sequence(kernel)
        ks = kernel_structure(seq)
        bound = minimal_partition(seq).weight + 5
        formula = series_sum([kernel_gf_formula(ks, m, GfKind.DELTA, bound) for m in range(bound + 1)], bound)
        counts = [0] * (bound + 1)
        for p in enumerate_partitions(MembershipSpec.pn(2), bound):
            if kernel_of(p) == seq:
                counts[p.weight] += 1
        assert formula.agrees_with(QSeries.from_counts(counts, bound), bound)

    def test_empty_kernel(self):
        ks = kernel_structure(())
        assert kernel_gf_formula(ks, 0, GfKind.DELTA, 4) == QSeries.one(4)
        assert kernel_gf_formula(ks, 1, GfKind.DELTA, 4) == QSeries.zero(4)

    def test_negative_m(self):
        with pytest.raises(PartitionError):
            kernel_gf_formula(kernel_structure(parse_sequence("a1b0")), -1, GfKind.DELTA, 4)


# ═══════════════════════════════════════════════════════════════════
# Enumeration
# ═══════════════════════════════════════════════════════════════════


class TestEnumeration:
    """Family enumeration against independent counts."""

    def test_one_colour_is_partition_function(self):
        assert count_by_weight(MembershipSpec.pn(1), 10) == partition_numbers(10)

    def test_p0_is_partition_function(self):
        assert count_by_weight(MembershipSpec.p0(), 8) == partition_numbers(8)

    def test_sorted_by_weight(self):
        weights = [p.weight for p in enumerate_partitions(MembershipSpec.pn(2), 6)]
        assert weights == sorted(weights)
        assert weights[0] == 0

    def test_every_member_passes(self, mp3):
        spec = MembershipSpec.cn(mp3)
        for p in enumerate_partitions(spec, 6):
            assert is_member(p, spec), str(p)

    def test_pn_series_is_constant_term(self):
        n, order = 2, 6
        series = generating_series(enumerate_partitions(MembershipSpec.pn(n), order), order, n,
                                   lambda p: (p.weight, partition_statistics(p, n).monomial()))
        assert series.agrees_with(constant_term_product(n, order), order)

    def test_principal_specialisation(self):
        assert count_by_weight(MembershipSpec.pn(2), 8, Dilation.principal(2)) == partition_numbers(8)

    def test_regular_partitions(self, mp3, alt3):
        for table in (mp3, alt3):
            counts = count_by_weight(MembershipSpec.cn(table), 8, Dilation.principal(3))
            assert counts == regular_partition_counts(3, 8) == [1, 1, 2, 2, 4, 5, 7, 9, 13]

    @pytest.mark.parametrize("variant", list(Variant))
    def test_table_family_is_difference_family(self, variant):
        by_table = list(enumerate_partitions(MembershipSpec.cn(builtin_delta_gamma(variant, 3)), 9))
        by_differences = list(enumerate_partitions(MembershipSpec.difference_variant(variant, 3), 9))
        assert set(by_table) == set(by_differences)
        assert len(by_table) > 100

    def test_capparelli_counts(self, mp2):
        assert count_by_weight(MembershipSpec.cn(mp2), 15, Dilation.capparelli()) == capparelli_c_counts(15)

    def test_negative_weight(self):
        with pytest.raises(PartitionError):
            list(enumerate_partitions(MembershipSpec.pn(2), -1))
