from fractions import Fraction

import pytest

from hyperbell.egf import (
    IntegralityError,
    bell_egf,
    bell_from_egf,
    exp_x,
    make_series,
    series_compose,
    series_exp,
    stirling_egf,
    stirling_from_egf,
    zero_series,
)
from hyperbell.exact import factorial
from hyperbell.triangles import bell, higher_stirling

from golden import brute_force_stirling


class TestSeriesBasics:
    def test_coefficient_count_is_order_plus_one(self):
        s = make_series([1, 2, 3], 5)
        assert s.order == 5
        assert len(s.coeffs) == 6

    def test_arithmetic(self):
        a = make_series([1, 2], 3)
        b = make_series([0, 1, 1], 3)
        assert (a + b).coeffs == (Fraction(1), Fraction(3), Fraction(1), Fraction(0))
        assert (a - 1).coefficient(0) == 0
        assert (a * b).coefficient(3) == 2  # only 2x * x^2 lands on x^3
        assert (a * b).coefficient(2) == 3  # 1*x^2 + 2x*x

    def test_truncation_silently_caps_products(self):
        x = make_series([0, 1], 2)
        cube = x * x * x
        assert cube.is_zero()

    def test_mismatched_orders_rejected(self):
        with pytest.raises(ValueError):
            make_series([1], 2) + make_series([1], 3)

    def test_integer_coefficient_raises_on_fraction(self):
        s = make_series([0, Fraction(1, 3)], 2)
        with pytest.raises(IntegralityError):
            s.integer_coefficient(1)


class TestSeriesExp:
    def test_exp_of_zero_is_one(self):
        result = series_exp(zero_series(4))
        assert result == make_series([1], 4)

    def test_exp_of_x(self):
        x = make_series([0, 1], 4)
        assert series_exp(x) == exp_x(4)
        assert series_exp(x).coeffs == (
            Fraction(1),
            Fraction(1),
            Fraction(1, 2),
            Fraction(1, 6),
            Fraction(1, 24),
        )

    def test_exp_of_exp_minus_one_gives_bell_numbers(self):
        inner = exp_x(5) - 1
        outer = series_exp(inner)
        got = [outer.integer_coefficient(n) for n in range(6)]
        assert got == [1, 1, 2, 5, 15, 52]

    def test_rejects_nonzero_constant_term(self):
        with pytest.raises(ValueError):
            series_exp(make_series([1, 1], 3))


class TestBellEgf:
    def test_order_zero_is_plain_exponential(self):
        assert bell_egf(0, 3) == exp_x(3)

    def test_order_two_cubic_coefficient(self):
        assert bell_egf(2, 3).coefficient(3) == Fraction(12, 6)

    def test_order_five_eighth_coefficient(self):
        assert bell_egf(5, 8).coefficient(8) == Fraction(45592666, factorial(8))

    def test_bell_from_egf_values(self):
        assert bell_from_egf(3, 2, 3) == 12
        assert bell_from_egf(6, 3, 6) == 12915
        for m in range(1, 7):
            assert bell_from_egf(1, m, 1) == 1

    def test_order_below_n_rejected(self):
        with pytest.raises(ValueError):
            bell_from_egf(5, 2, 3)


class TestStirlingEgf:
    def test_single_column_order_one_counts_one_block_partitions(self):
        s = stirling_egf(1, 1, 6)
        assert [s.integer_coefficient(n) for n in range(1, 7)] == [1] * 6

    def test_table2_value(self):
        assert stirling_from_egf(5, 3, 5) == 725

    def test_two_block_column_against_brute_force(self):
        assert stirling_from_egf(4, 2, 1, 4) == 7 == brute_force_stirling(4, 2)

    def test_matches_triangle_recurrence(self):
        for m in range(1, 5):
            tri = higher_stirling(6, m)
            for n in range(1, 7):
                for k in range(1, n + 1):
                    assert stirling_from_egf(n, k, m, 6) == tri.entry(n, k)

    def test_rejects_column_beyond_order(self):
        with pytest.raises(ValueError):
            stirling_egf(5, 1, 4)


class TestLaws:
    def test_composition_law(self):
        # substituting (e^x - 1) into one order gives the next order
        order = 8
        minus_one = exp_x(order) - 1
        for m in range(5):
            current = bell_egf(m, order) - 1
            successor = bell_egf(m + 1, order) - 1
            assert series_compose(current, minus_one) == successor

    def test_stacking_law(self):
        # columns stack to the whole set: sum_k column_k = bell EGF - 1
        order = 8
        for m in range(1, 4):
            total = zero_series(order)
            for k in range(1, order + 1):
                total = total + stirling_egf(k, m, order)
            expected = bell_egf(m, order) - 1
            assert total == expected
            assert expected.coefficient(0) == 0

    def test_agreement_with_recurrence(self):
        for n in range(1, 9):
            for m in range(1, 6):
                assert bell_from_egf(n, m, 8) == bell(n, m, "triangle-recurrence")

    def test_integrality_across_range(self):
        for m in range(7):
            series = bell_egf(m, 10)
            for n in range(11):
                value = series.integer_coefficient(n)
                assert value == bell(n, m)
