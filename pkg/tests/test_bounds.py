"""
Tests for the bound values and the bound calculator.
"""

from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from crjoin.bounds.calculator import BoundCalculator
from crjoin.bounds.models import OVERFLOW, ZERO, BoundCheck, BoundValue
from crjoin.exceptions import InputError, OrderViolationError, UnknownFunctionError
from crjoin.reduction.models import Arrow

R, L = Arrow.RIGHT, Arrow.LEFT


class TestBoundValue:
    def test_overflow_absorbs(self):
        assert (OVERFLOW + 1).is_overflow
        assert (BoundValue(3) * OVERFLOW).is_overflow

    def test_overflow_is_largest(self):
        assert OVERFLOW > BoundValue(10 ** 100)
        assert not OVERFLOW < BoundValue(10 ** 100)

    def test_cannot_subtract_overflow(self):
        with pytest.raises(ValueError):
            BoundValue(3) - OVERFLOW

    def test_rendering(self):
        assert BoundValue(Fraction(9, 2)).render() == "9/2"
        assert BoundValue(12).render() == "12"
        assert OVERFLOW.render(64) == "overflow(>2^64)"

    def test_dominates(self):
        assert BoundValue(3).dominates(3)
        assert not BoundValue(Fraction(5, 2)).dominates(3)
        assert OVERFLOW.dominates(10 ** 9)

    def test_check(self):
        check = BoundCheck.compare("left", 5, BoundValue(4))
        assert not check.passed
        assert BoundCheck.compare("left", 4, BoundValue(4)).passed


class TestMeasures:
    def test_iter_exp(self, calculator):
        assert calculator.iter_exp(1, 4) == 65536
        assert calculator.iter_exp(7, 0) == 7

    def test_iter_exp_overflows_under_a_small_cap(self):
        value = BoundCalculator(64).iter_exp(1, 5)
        assert value.is_overflow
        assert value.render(64) == "overflow(>2^64)"

    def test_f_iter(self, calculator):
        assert calculator.f_iter(4, 0) == 4
        assert calculator.f_iter(4, 2) == 128

    def test_len(self, calculator):
        assert calculator.len_bound(4, 0) == ZERO
        assert calculator.len_bound(4, 1) == 1
        assert calculator.len_bound(4, 2) == 4
        assert calculator.len_bound(3, 3) == Fraction(9, 2)

    def test_len_is_floored_at_zero(self, calculator):
        assert calculator.len_bound(1, 1) == 0

    def test_sizes(self, calculator):
        assert calculator.star_size_bound(3) == 4
        assert calculator.size_after_steps(8, 3) == 8
        assert calculator.size_after_steps(16, 1) == 32

    def test_rev_and_mon(self, calculator):
        assert calculator.rev_bound(4, 1) == 8
        assert calculator.mon_bound(2, 0, 1) == 4

    def test_argument_validation(self, calculator):
        with pytest.raises(InputError):
            calculator.len_bound(-1, 2)
        with pytest.raises(InputError):
            calculator.rev_bound(4, 0)
        with pytest.raises(InputError):
            calculator.star_size_bound(0)

    @given(st.integers(min_value=4, max_value=8), st.integers(min_value=0, max_value=3))
    def test_len_is_monotone(self, size, n):
        calculator = BoundCalculator(4096)
        assert calculator.len_bound(size, n) <= calculator.len_bound(size, n + 1)
        assert calculator.len_bound(size, n) <= calculator.len_bound(size + 1, n)


class TestTriples:
    def test_single_left_link(self, calculator):
        triple = calculator.cr_eq_bound([L], 1, 1)
        assert (triple.left_len, triple.reduct_descriptor, triple.right_len) == (
            ZERO,
            "M_0^{0*}",
            BoundValue(1),
        )

    def test_single_right_link(self, calculator):
        triple = calculator.cr_eq_bound([R], 4, 4)
        assert triple.left_len == 2
        assert triple.reduct_descriptor == "M_0^{1*}"
        assert triple.right_len == 8

    def test_trailing_left_links_add_one(self, calculator):
        triple = calculator.cr_eq_bound([R, L, L], 4, 4)
        assert triple.left_len == 2
        assert triple.right_len == 10

    def test_empty_chain(self, calculator):
        triple = calculator.cr_eq_bound([], 5, 5)
        assert triple.render() == "<0, M_0^{0*}, 0>"

    def test_v_size(self, calculator):
        triple = calculator.v_size_bound(1, 4, 1)
        assert triple.left_len == 12
        assert triple.reduct_descriptor == "M^{1*}"
        assert triple.right_len == 8

    def test_v_size_order(self, calculator):
        with pytest.raises(OrderViolationError):
            calculator.v_size_bound(2, 4, 1)
        with pytest.raises(InputError):
            calculator.v_size_bound(0, 4, 1)

    def test_cr_red_against_bl(self, calculator):
        assert calculator.compare_cr_red_with_bl(2, 0, 1) == [[0, 1, "1", "6", "256"]]

    def test_cr_red_descriptor(self, calculator):
        assert calculator.cr_red_bound(1, 3, 2).reduct_descriptor == "N_1^{2*}"


class TestEvaluate:
    def test_by_name(self, calculator):
        assert calculator.evaluate("len", ["4", "2"]) == 4
        assert calculator.evaluate("cr-eq", ["->", "4", "4"]).right_len == 8

    def test_unknown_function(self, calculator):
        with pytest.raises(UnknownFunctionError):
            calculator.evaluate("ackermann", ["1", "2"])

    def test_bad_arguments(self, calculator):
        with pytest.raises(InputError):
            calculator.evaluate("len", ["a", "1"])
        with pytest.raises(InputError):
            calculator.evaluate("len", ["4"])
        with pytest.raises(InputError):
            calculator.evaluate("cr-eq", ["->", "4"])

    def test_grid(self, calculator):
        rows = calculator.grid("len", [[4], [1, 2]])
        assert rows == [[4, 1, BoundValue(1)], [4, 2, BoundValue(4)]]
