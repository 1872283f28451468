"""
Tests for exact polynomial and truncated series arithmetic.
"""

from fractions import Fraction

import pytest

from colour import parse_colour
from oracles import partition_numbers, pentagonal
from qseries import (Dilation, LaurentPoly, PrecisionError, QSeries, SeriesError, constant_term_product, dilate,
                     euler, g, inv_euler, inv_pochhammer, jacobi_triple_product_check, main2_jacobi_form,
                     main2_product_form, pochhammer, q_power, qbinom, qpoly_coefficients, quadratic_form,
                     quadratic_form_terms, with_nvars)


def assert_counts(series, expected):
    assert series.counts(len(expected) - 1) == expected


# ═══════════════════════════════════════════════════════════════════
# Laurent polynomials
# ═══════════════════════════════════════════════════════════════════


class TestLaurentPoly:
    """Exact multivariate arithmetic."""

    def test_difference_of_squares(self):
        a = LaurentPoly.variable(0, 2)
        one = LaurentPoly.constant(1, 2)
        assert (a + one) * (a - one) == a * a - one

    def test_zero_terms_dropped(self):
        a = LaurentPoly.variable(1, 2)
        assert (a - a).is_zero()

    def test_monomial_inverse(self):
        m = LaurentPoly.monomial([2, -1])
        assert m * m.inverse() == 1

    def test_evaluate(self):
        p = LaurentPoly({(1, 0): 3, (0, -1): 1}, 2)
        assert p.evaluate([2, 4]) == Fraction(25, 4)

    def test_specialise(self):
        p = LaurentPoly({(1, 0): 1, (0, 1): 2}, 2)
        assert p.specialise([1, 1]) == {1: 3}

    def test_format(self):
        assert str(q_power(2) + q_power(0, 3)) == "q^2 + 3"

    def test_mismatched_exponents(self):
        with pytest.raises(SeriesError):
            LaurentPoly({(1,): 1}, 2)


# ═══════════════════════════════════════════════════════════════════
# Truncated series
# ═══════════════════════════════════════════════════════════════════


class TestQSeries:
    """Series operations and precision tracking."""

    def test_euler_matches_pentagonal(self):
        assert euler(12).counts() == pentagonal(12)

    def test_partition_function(self):
        assert_counts(inv_euler(9), [1, 1, 2, 3, 5, 7, 11, 15, 22, 30])

    def test_reciprocal_round_trip(self):
        series = euler(10)
        assert (series * series.reciprocal()).agrees_with(QSeries.one(10))

    def test_reciprocal_of_zero(self):
        with pytest.raises(SeriesError):
            QSeries.zero(5).reciprocal()

    def test_precision_error(self):
        with pytest.raises(PrecisionError):
            QSeries.one(3).coefficient(4)

    def test_first_mismatch(self):
        mismatch = QSeries.from_counts([1, 2, 3]).first_mismatch(QSeries.from_counts([1, 2, 4]))
        assert mismatch == {"q": 2, "monomial": [], "expected": 3, "actual": 4}

    def test_shift_and_add(self):
        one = QSeries.one(4)
        assert_counts(one + one.shift(2), [1, 0, 1, 0, 0])

    def test_mixed_variables_rejected(self):
        with pytest.raises(SeriesError):
            QSeries.one(3, 1) + QSeries.one(3, 2)

    def test_specialise_colours(self):
        a = LaurentPoly.variable(0, 1)
        series = QSeries({1: a, 2: a * a + a}, 3, 1)
        assert series.specialise_colours([2]).counts() == [0, 2, 6, 0]

    def test_dict_round_trip(self):
        series = constant_term_product(2, 4)
        assert QSeries.from_dict(series.to_dict()) == series

    def test_with_nvars(self):
        lifted = with_nvars(euler(5), 3)
        assert lifted.nvars == 3
        assert lifted.counts() == euler(5).counts()


class TestProducts:
    """Finite and infinite q-Pochhammer symbols."""

    def test_finite_product(self):
        # (q; q)_2 = 1 - q - q^2 + q^3
        assert euler(5, 2).counts() == [1, -1, -1, 1, 0, 0]

    def test_negative_shift(self):
        # (1 - q^-1)(1 - 1)(...) vanishes
        assert not pochhammer(LaurentPoly.constant(1), -1, 6, 1).coeffs

    def test_inverse_two_step(self):
        # 1/(q; q^2)_inf counts partitions into odd parts
        assert_counts(inv_pochhammer(LaurentPoly.constant(1), 1, 8, 2), [1, 1, 1, 2, 2, 3, 4, 5, 6])

    def test_bad_step(self):
        with pytest.raises(SeriesError):
            pochhammer(LaurentPoly.constant(1), 1, 4, 0)


class TestBinomials:
    """Gaussian binomials and the g polynomials."""

    def test_qbinom_4_2(self):
        assert qpoly_coefficients(qbinom(4, 2)) == {0: 1, 1: 1, 2: 2, 3: 1, 4: 1}

    def test_qbinom_out_of_range(self):
        assert qbinom(3, -1).is_zero()
        assert qbinom(3, 4).is_zero()

    def test_qbinom_symmetry(self):
        for n in range(7):
            for k in range(n + 1):
                assert qbinom(n, k) == qbinom(n, n - k)

    def test_g_base_cases(self):
        assert g(0, 0, []) == q_power(0)
        assert g(1, 1, [5]) == q_power(1)

    def test_g_argument_checks(self):
        with pytest.raises(SeriesError):
            g(2, 1, [1])
        with pytest.raises(SeriesError):
            g(1, 2, [1])


# ═══════════════════════════════════════════════════════════════════
# Constant terms and closed forms
# ═══════════════════════════════════════════════════════════════════


class TestConstantTerms:
    """Triple product, constant-term product and its two closed forms."""

    def test_triple_product(self):
        assert jacobi_triple_product_check(None, 6)
        assert jacobi_triple_product_check(LaurentPoly.variable(0, 1), 5)

    def test_one_colour_is_partition_function(self):
        assert constant_term_product(1, 9).counts() == partition_numbers(9)

    @pytest.mark.parametrize("n, order", [(2, 8), (3, 6)])
    def test_constant_term_is_balanced_and_positive(self, n, order):
        series = constant_term_product(n, order)
        for e in range(order + 1):
            coeff = series.coefficient(e)
            assert coeff.total_degrees() == [0], e
            assert all(v > 0 for v in coeff.terms.values()), e

    @pytest.mark.parametrize("n, order", [(1, 8), (2, 8), (3, 5)])
    def test_jacobi_form(self, n, order):
        assert main2_jacobi_form(n, order).agrees_with(constant_term_product(n, order), order)

    @pytest.mark.parametrize("n, order", [(2, 8), (3, 5)])
    def test_product_form(self, n, order):
        assert main2_product_form(n, order).agrees_with(constant_term_product(n, order), order)

    def test_quadratic_form_terms(self):
        for s in ([1], [1, 1], [2, -1], [0, 3, -2]):
            assert sum(quadratic_form_terms(s)) == quadratic_form(s)


class TestDilation:
    """Part maps and their action on series."""

    def test_principal_weights(self):
        d = Dilation.principal(3)
        assert d.part_weight(2, parse_colour("a2b0")) == 4
        assert d.part_weight(1, parse_colour("a0b2")) == 5

    def test_capparelli_weights(self):
        d = Dilation.capparelli()
        assert d.min_growth == 2
        assert d.dilated_order(3) == 7

    def test_non_positive_parts_rejected(self):
        with pytest.raises(SeriesError):
            Dilation(1, (0, -1))

    def test_dilate_monomial(self):
        series = QSeries({1: LaurentPoly.monomial([0, 1])}, 3, 2)
        assert dilate(series, Dilation.capparelli()).counts() == [0, 0, 1, 0, 0, 0, 0, 0]

    def test_dilate_needs_matching_colours(self):
        with pytest.raises(SeriesError):
            dilate(QSeries.one(3, 3), Dilation.capparelli())

    def test_primc_is_principal_two(self):
        d = Dilation.primc()
        assert d == Dilation.principal(2)
        assert [d.part_weight(3, parse_colour(c)) for c in ("a1b0", "a1b1", "a0b1")] == [5, 6, 7]
