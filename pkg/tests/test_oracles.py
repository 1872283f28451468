"""
Tests for the classical reference counts.
"""

import pytest

from oracles import (capparelli_c_counts, capparelli_d_counts, coloured_partition_counts, partition_numbers,
                     pentagonal, regular_partition_counts)


class TestOracles:
    """Known values of classical partition functions."""

    def test_pentagonal(self):
        assert pentagonal(12) == [1, -1, -1, 0, 0, 1, 0, 1, 0, 0, 0, 0, -1]

    def test_partition_numbers(self):
        assert partition_numbers(10) == [1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42]

    def test_three_regular(self):
        assert regular_partition_counts(3, 10) == [1, 1, 2, 2, 4, 5, 7, 9, 13, 16, 22]

    def test_one_regular_is_empty_only(self):
        assert regular_partition_counts(1, 4) == [1, 0, 0, 0, 0]

    def test_two_regular_is_distinct_parts(self):
        assert regular_partition_counts(2, 8) == [1, 1, 1, 2, 2, 3, 4, 5, 6]

    def test_capparelli_sides_agree(self):
        assert capparelli_c_counts(40) == capparelli_d_counts(40)

    def test_capparelli_small_values(self):
        # distinct parts from 2, 3, 4, 6
        assert capparelli_d_counts(6) == [1, 0, 1, 1, 1, 1, 2]

    @pytest.mark.parametrize("colours", [1, 2, 3])
    def test_coloured_counts(self, colours):
        counts = coloured_partition_counts(colours, 6)
        assert counts[0] == 1
        assert counts[1] == colours
        if colours == 1:
            assert counts == partition_numbers(6)
