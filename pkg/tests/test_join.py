"""
Tests for chain operations and the constructive joins.
"""

import random

import pytest

from crjoin.config import ResourceLimits
from crjoin.exceptions import (
    AppendMismatchError,
    IndexOutOfRangeError,
    InputError,
    LinkInvalidError,
    OrderViolationError,
    PeakMismatchError,
    ReplayError,
    ResourceCapError,
)
from crjoin.harness.generators import TermGenerator, random_chain, random_path
from crjoin.join.chains import (
    chain_append,
    chain_arrow_counts,
    chain_from_path,
    chain_reverse,
    sub_chain,
    validate_chain,
    verify_certificate,
)
from crjoin.join.joiner import ChainJoiner, JoinConfig
from crjoin.join.models import EqualityChain, JoinCertificate
from crjoin.reduction.models import Arrow, ReductionPath
from crjoin.reduction.steps import contract, takahashi_star
from crjoin.syntax.documents import parse_chain, parse_path
from crjoin.terms.core import alpha_eq
from crjoin.terms.models import Branch

from .samples import PEAK_LEFT, PEAK_RIGHT, SHARED, SINGLE_LEFT, VALLEY

R, L = Arrow.RIGHT, Arrow.LEFT


@pytest.fixture
def valley():
    return parse_chain(VALLEY)


@pytest.fixture
def peak():
    return parse_path(PEAK_LEFT), parse_path(PEAK_RIGHT)


class TestChains:
    def test_arrow_counts(self, valley):
        assert valley.pattern() == "->-><-<-"
        assert chain_arrow_counts(valley, 0, 4) == (2, 2)
        assert chain_arrow_counts(valley, 1, 3) == (1, 1)
        assert chain_arrow_counts(valley, 2, 2) == (0, 0)

    def test_index_range(self, valley):
        with pytest.raises(IndexOutOfRangeError):
            chain_arrow_counts(valley, 3, 2)
        with pytest.raises(IndexOutOfRangeError):
            sub_chain(valley, 0, 5)

    def test_reverse(self, valley):
        reversed_chain = chain_reverse(valley)
        assert reversed_chain.pattern() == "->-><-<-"
        assert reversed_chain.source is valley.target
        validate_chain(reversed_chain)

    def test_append(self, valley):
        joined = chain_append(sub_chain(valley, 0, 2), sub_chain(valley, 2, 4))
        assert joined == valley

    def test_append_mismatch(self, valley):
        with pytest.raises(AppendMismatchError):
            chain_append(sub_chain(valley, 0, 1), sub_chain(valley, 2, 4))

    def test_from_path(self, peak):
        _, right = peak
        chain = chain_from_path(right)
        assert chain.arrows == (R,)
        validate_chain(chain)

    def test_validate_rejects_a_non_redex_witness(self, valley):
        forged = EqualityChain(valley.terms, valley.arrows, ((Branch.FUN,),) + valley.witnesses[1:])
        with pytest.raises(LinkInvalidError):
            validate_chain(forged)

    def test_validate_rejects_a_redex_with_another_contractum(self, term):
        source = term(SHARED)
        inner = EqualityChain((source, term("(\\x. x x) z")), (R,), ((Branch.ARG,),))
        validate_chain(inner)
        forged = EqualityChain(inner.terms, inner.arrows, ((),))
        with pytest.raises(LinkInvalidError):
            validate_chain(forged)

    def test_validate_accepts_a_redex_with_the_same_contractum(self, valley):
        # (\x. x) ((\y. y) z) contracts to (\y. y) z at the root and, up to α, at Arg
        other = EqualityChain(valley.terms, valley.arrows, ((Branch.ARG,),) + valley.witnesses[1:])
        validate_chain(other)

    def test_shape_is_checked(self, term):
        with pytest.raises(ValueError):
            EqualityChain((term("a"), term("b")), ())
        with pytest.raises(ValueError):
            EqualityChain(())


class TestMainJoin:
    def test_single_left_link(self, joiner):
        first, second = joiner.join_main(parse_chain(SINGLE_LEFT))
        assert first.lengths == (0, 1)
        assert first.descriptor == "M_0^{0*}"
        assert first.bounds_passed
        assert second.descriptor == "M_1^{1*}"

    def test_empty_chain(self, joiner, term):
        first, second = joiner.join_main(EqualityChain.single(term(SHARED)))
        assert first.lengths == second.lengths == (0, 0)
        assert first.descriptor == second.descriptor == "M_0^{0*}"

    def test_valley(self, joiner, valley, term):
        first, second = joiner.join_main(valley)
        assert first.descriptor == "M_0^{2*}"
        assert second.descriptor == "M_4^{2*}"
        assert alpha_eq(first.reduct, term("z"))
        assert alpha_eq(second.reduct, term("z"))
        assert first.bounds_passed and second.bounds_passed
        assert alpha_eq(first.left_path.source, valley.source)
        assert alpha_eq(first.right_path.source, valley.target)


class TestRefinedJoin:
    def test_crossed_point(self, joiner, valley):
        assert joiner.crossed_point(valley) == (2, 0)

    def test_valley(self, joiner, valley, term):
        cert = joiner.join_refined(valley)
        assert cert.descriptor == "M_2^{0*}"
        assert alpha_eq(cert.reduct, term("z"))
        assert cert.lengths == (2, 2)
        assert cert.bounds_passed

    def test_all_crossed_indices(self, joiner, valley, term):
        result = joiner.join_all(valley)
        assert [c.descriptor for c in result.towards_left] == [
            "M_2^{0*}",
            "M_1^{1*}",
            "M_0^{2*}",
        ]
        assert [c.descriptor for c in result.towards_right] == [
            "M_2^{0*}",
            "M_3^{1*}",
            "M_4^{2*}",
        ]
        assert len(result.certificates()) == 6
        assert len(result.term_paths) == 5
        assert alpha_eq(result.crossed_reduct, term("z"))
        for path, source in zip(result.term_paths, valley.terms):
            assert alpha_eq(path.source, source)
            assert alpha_eq(path.target, result.crossed_reduct)


class TestPeakJoins:
    def test_reduction_peak(self, joiner, peak, term):
        first, second = joiner.join_reduction_peak(*peak)
        assert first.descriptor == "Q_1^{1*}"
        assert second.descriptor == "Q_0^{1*}"
        assert alpha_eq(first.reduct, term("z z"))
        assert alpha_eq(second.reduct, term("z z"))
        assert first.bounds_passed and second.bounds_passed

    def test_peak_red(self, joiner, peak, term):
        cert = joiner.join_peak_red(*peak)
        assert cert.descriptor == "P_1^{1*}"
        assert alpha_eq(cert.reduct, term("z z"))
        assert cert.bounds_passed

    def test_peak_valley(self, joiner, peak, term):
        cert = joiner.join_peak_valley(*peak)
        assert cert.descriptor == "M^{1*}"
        assert alpha_eq(cert.reduct, takahashi_star(term(SHARED)))
        assert cert.bounds_passed

    def test_improved_without_new_redexes(self, joiner, peak):
        result = joiner.join_improved(*peak)
        assert (result.left_new_redexes, result.right_new_redexes) == (0, 0)
        assert result.towards_right.descriptor == "Q_1^{1*}"
        assert result.towards_left.descriptor == "P_1^{1*}"

    def test_improved_counts_new_redexes(self, joiner, term):
        first = contract(term("(\\x. x x) (\\y. y)"), ())
        second = contract(first.target, ())
        left = ReductionPath.of(first.source, [first, second])
        right = ReductionPath.of(first.source, [first])
        result = joiner.join_improved(left, right)
        assert (result.left_new_redexes, result.right_new_redexes) == (1, 0)
        assert result.towards_right.descriptor == "Q_1^{2*}"
        assert result.towards_left.descriptor == "P_2^{1*}"
        assert alpha_eq(result.towards_right.reduct, term("\\y. y"))

    def test_longer_left_side(self, joiner, peak):
        left, right = peak
        longer = left.extend(contract(left.target, ()))
        with pytest.raises(OrderViolationError):
            joiner.join_reduction_peak(longer, right)
        with pytest.raises(OrderViolationError):
            joiner.join_peak_valley(longer, right)

    def test_empty_side(self, joiner, peak):
        left, right = peak
        with pytest.raises(InputError):
            joiner.join_reduction_peak(ReductionPath.empty(left.source), right)

    def test_mismatched_sources(self, joiner, peak):
        left, _ = peak
        other = parse_path("(\\x. x) b\n->\nb\n")
        with pytest.raises(PeakMismatchError):
            joiner.join_reduction_peak(left, other)
        with pytest.raises(PeakMismatchError):
            joiner.join_improved(left, other)


class TestCertificates:
    def test_verify_rejects_wrong_reduct(self, joiner, valley, term):
        cert = joiner.join_refined(valley)
        forged = JoinCertificate(
            reduct=term("y"),
            left_path=cert.left_path,
            right_path=cert.right_path,
            descriptor=cert.descriptor,
        )
        with pytest.raises(ReplayError):
            verify_certificate(forged)

    def test_bounds_can_be_skipped(self, limits, valley):
        joiner = ChainJoiner(JoinConfig(limits=limits, check_bounds=False))
        first, _ = joiner.join_main(valley)
        assert first.bound_checks == ()

    def test_path_cap(self, valley):
        joiner = ChainJoiner(JoinConfig(limits=ResourceLimits(path_length_cap=1)))
        with pytest.raises(ResourceCapError):
            joiner.join_refined(valley)


@pytest.mark.parametrize("seed", range(15))
def test_random_chains_join(seed, limits):
    rng = random.Random(seed)
    generator = TermGenerator(rng)
    joiner = ChainJoiner(JoinConfig(limits=limits))
    try:
        chain = random_chain(rng, generator.term(8), rng.randint(0, 4), generator, limits)
        first, second = joiner.join_main(chain)
        crossed = joiner.join_refined(chain)
    except ResourceCapError:
        pytest.skip("instance exceeds the resource caps")
    assert alpha_eq(first.left_path.source, chain.source)
    assert alpha_eq(second.right_path.source, chain.target)
    assert first.bounds_passed and second.bounds_passed and crossed.bounds_passed


@pytest.mark.parametrize("seed", range(10))
def test_random_peaks_join(seed, limits):
    rng = random.Random(seed)
    generator = TermGenerator(rng)
    joiner = ChainJoiner(JoinConfig(limits=limits))
    start = generator.term_with_redex(8)
    try:
        left = random_path(rng, start, rng.randint(1, 2), limits)
        right = random_path(rng, start, rng.randint(left.length, 3), limits)
        if left.length > right.length:
            left, right = right, left
        first, second = joiner.join_reduction_peak(left, right)
        valley_cert = joiner.join_peak_valley(left, right)
    except ResourceCapError:
        pytest.skip("instance exceeds the resource caps")
    assert alpha_eq(valley_cert.reduct, valley_cert.right_path.target)
    assert first.bounds_passed and second.bounds_passed
