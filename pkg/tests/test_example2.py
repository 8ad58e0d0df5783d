"""
Tests for the Church-numeral tower example.
"""

import pytest

from crjoin.config import ResourceLimits
from crjoin.exceptions import InputError, ResourceCapError
from crjoin.harness.example2 import (
    build_chain,
    church,
    example_terms,
    iterate_application,
    run_example2,
    tower_numeral,
)
from crjoin.join.chains import validate_chain, verify_certificate
from crjoin.terms.core import alpha_eq
from crjoin.terms.models import Var


def test_church_sizes():
    assert church(1).size == 5
    assert church(2).size == 7


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_sizes(n):
    assert tower_numeral(n).size == 8 * n - 1
    m1, m2 = example_terms(n)
    assert m1.size == m2.size == 8 * n + 11


def test_tower_needs_a_positive_height():
    with pytest.raises(InputError):
        tower_numeral(0)
    with pytest.raises(InputError):
        run_example2(0)


def test_chain_is_a_valley():
    chain = build_chain(1)
    validate_chain(chain)
    assert chain.pattern() == "->" * 4 + "<-" * 4
    assert alpha_eq(chain.terms[4], iterate_application(Var("p"), 3, Var("q")))


@pytest.mark.parametrize("n, height, steps", [(1, 2, 4), (3, 16, 20)])
def test_small_towers(n, height, steps):
    report, cert = run_example2(n)
    assert report.passed
    assert report.size_m1 == report.size_m2 == 8 * n + 11
    assert report.stated_size == 8 * n + 1
    assert report.left_steps == report.right_steps == steps
    assert report.chain_length <= 2 * (4 + height)
    assert report.reduct_size == 2 * (height + 1) + 1
    verify_certificate(cert)


def test_height_two_exceeds_the_length_estimate():
    # innermost normalization spends 3 steps per doubling once the tower has two levels
    report, _ = run_example2(2)
    assert report.reduct_matches
    assert report.chain_length == 18
    assert report.chain_length_bound == "16"
    assert not report.chain_length_fits
    assert not report.passed


def test_term_cap():
    with pytest.raises(ResourceCapError):
        run_example2(3, limits=ResourceLimits(term_size_cap=20))


def test_bit_cap():
    with pytest.raises(ResourceCapError):
        run_example2(5, bit_cap=64)


@pytest.mark.slow
def test_height_four():
    report, cert = run_example2(4)
    assert report.passed
    assert report.chain_length <= 2 * (4 + 65536)
    assert report.reduct_size == 2 * 65537 + 1
