"""
Tests for arrow-pattern classification.
"""

from math import comb

import pytest

from crjoin.exceptions import InputError, PatternCapError
from crjoin.join.patterns import classify, enumerate_patterns
from crjoin.reduction.models import Arrow

R, L = Arrow.RIGHT, Arrow.LEFT


@pytest.mark.parametrize("k", [0, 1, 4, 5])
def test_class_sizes_are_binomial(k):
    table = enumerate_patterns(k)
    assert table.class_sizes() == [comb(k, r) for r in range(k + 1)]
    assert len(table.rows()) == 2 ** k


def test_four_links():
    assert enumerate_patterns(4).class_sizes() == [1, 4, 6, 4, 1]


def test_valley_pattern():
    row = classify((R, R, L, L))
    assert row.pattern == "->-><-<-"
    assert row.source_reduct == "M_0^{2*}"
    assert row.target_reduct == "M_4^{2*}"
    assert row.crossed_reduct == "M_2^{0*}"


def test_crossed_point_counts_leading_left_links():
    row = classify((L, R))
    assert row.crossed_reduct == "M_1^{1*}"
    assert classify((L, L, R, R)).crossed_reduct == "M_2^{2*}"


def test_crossed_iterations_never_exceed_either_count():
    for row in enumerate_patterns(6).rows():
        assert row.crossed_iterations <= min(row.left, row.right)


def test_cap():
    with pytest.raises(PatternCapError):
        enumerate_patterns(13)
    assert enumerate_patterns(3, cap=3).k == 3


def test_negative_length():
    with pytest.raises(InputError):
        enumerate_patterns(-1)
