"""
Tests for β-steps, the Takahashi translation, residuals and strategies.
"""

import random

import pytest
from hypothesis import given, settings

from crjoin.config import ResourceLimits
from crjoin.exceptions import InputError, InvalidPositionError, ReplayError, ResourceCapError
from crjoin.reduction.models import Arrow, MarkedTerm, ReductionPath, Step
from crjoin.reduction.steps import (
    contract,
    count_new_redex_contractions,
    develop,
    development_segments,
    gross_knuth_path,
    new_redexes,
    replay,
    residuals,
    star_iter,
    star_iter_path,
    takahashi_star,
)
from crjoin.reduction.strategies import Strategy, normalize, run_strategy
from crjoin.terms.core import alpha_eq, redexes
from crjoin.terms.models import Branch, RedexSet

from .samples import OMEGA, SHARED
from .strategies import redex_terms

F, A, B = Branch.FUN, Branch.ARG, Branch.BODY
ROOT = ()


class TestArrow:
    def test_parse(self):
        assert Arrow.parse("->") is Arrow.RIGHT
        assert Arrow.parse("<-") is Arrow.LEFT
        assert Arrow.RIGHT.flipped is Arrow.LEFT

    def test_unknown_token(self):
        with pytest.raises(ValueError):
            Arrow.parse("=>")


class TestContract:
    def test_root_redex_duplicates_argument(self, term):
        step = contract(term(SHARED), ROOT)
        assert alpha_eq(step.target, term("(\\y. y) z ((\\y. y) z)"))
        assert step.target.size == 9

    def test_inner_redex(self, term):
        step = contract(term(SHARED), (A,))
        assert alpha_eq(step.target, term("(\\x. x x) z"))

    def test_non_redex_position(self, term):
        with pytest.raises(InvalidPositionError):
            contract(term(SHARED), (F,))

    def test_size_cap(self, term):
        with pytest.raises(ResourceCapError):
            contract(term(SHARED), ROOT, ResourceLimits(term_size_cap=8))


class TestTakahashi:
    def test_contracts_all_redexes(self, term):
        assert alpha_eq(takahashi_star(term(SHARED)), term("z z"))

    def test_omega_is_a_fixed_point(self, term):
        omega = term(OMEGA)
        assert alpha_eq(takahashi_star(omega), omega)
        assert alpha_eq(star_iter(omega, 5), omega)

    def test_normal_forms_are_fixed(self, term):
        t = term("\\x. x (\\y. y)")
        assert takahashi_star(t) is t

    def test_created_redexes_survive_one_round(self, term):
        t = term("(\\x. x a) (\\y. y)")
        assert alpha_eq(takahashi_star(t), term("(\\y. y) a"))
        assert alpha_eq(star_iter(t, 2), term("a"))

    def test_zero_iterations(self, term):
        t = term(SHARED)
        assert star_iter(t, 0) is t

    def test_negative_iterations(self, term):
        with pytest.raises(InputError):
            star_iter(term(SHARED), -1)


class TestDevelopments:
    def test_gross_knuth_reaches_the_translation(self, term):
        path = gross_knuth_path(term(SHARED))
        assert path.length == 2
        # inner redex first, then the root
        assert [step.redex for step in path.steps] == [(A,), ROOT]
        assert alpha_eq(path.target, term("z z"))

    def test_star_iter_path(self, term):
        t = term("(\\x. x a) (\\y. y)")
        path = star_iter_path(t, 2)
        assert alpha_eq(path.target, star_iter(t, 2))
        replay(path)

    def test_partial_development(self, term):
        path = develop(term(SHARED), [(A,)])
        assert path.length == 1
        assert alpha_eq(path.target, term("(\\x. x x) z"))

    @settings(max_examples=100, deadline=None)
    @given(redex_terms(10))
    def test_gross_knuth_matches_translation(self, t):
        path = gross_knuth_path(t)
        assert alpha_eq(path.target, takahashi_star(t))
        replay(path)


class TestResiduals:
    def test_argument_copies(self, term):
        t = term(SHARED)
        marked = MarkedTerm(t, redexes(t))
        assert residuals(marked, ROOT) == RedexSet.of([(F,), (A,)])

    def test_disjoint_marks_stay(self, term):
        t = term("(\\x. x) a ((\\y. y) b)")
        marked = MarkedTerm(t, redexes(t))
        assert residuals(marked, (F,)) == RedexSet.of([(A,)])

    def test_marks_must_be_redexes(self, term):
        t = term(SHARED)
        with pytest.raises(InvalidPositionError):
            MarkedTerm(t, RedexSet.of([(F,)]))

    def test_new_redexes(self, term):
        step = contract(term("(\\x. x x) (\\y. y)"), ROOT)
        assert new_redexes(step) == RedexSet.of([ROOT])

    def test_count_new_redex_contractions(self, term):
        first = contract(term("(\\x. x x) (\\y. y)"), ROOT)
        second = contract(first.target, ROOT)
        path = ReductionPath.of(first.source, [first, second])
        assert count_new_redex_contractions(path) == 1
        assert [segment.length for segment in development_segments(path)] == [1, 1]


class TestPaths:
    def test_terms_and_target(self, term):
        path = gross_knuth_path(term(SHARED))
        assert len(path.terms()) == 3
        assert path.terms()[-1] is path.target

    def test_then_rejects_gaps(self, term):
        left = gross_knuth_path(term(SHARED))
        right = gross_knuth_path(term("(\\x. x) b"))
        with pytest.raises(ReplayError):
            left.then(right)

    def test_then_checks_empty_paths_too(self, term):
        path = gross_knuth_path(term(SHARED))
        with pytest.raises(ReplayError):
            path.then(ReductionPath.empty(term("b")))
        with pytest.raises(ReplayError):
            ReductionPath.empty(term("b")).then(path)
        assert path.then(ReductionPath.empty(term("z z"))) is path

    def test_replay_detects_tampering(self, term):
        t = term(SHARED)
        forged = ReductionPath.of(t, [Step(t, ROOT, term("z z"))])
        with pytest.raises(ReplayError):
            replay(forged)

    def test_replay_detects_bad_positions(self, term):
        t = term(SHARED)
        forged = ReductionPath.of(t, [Step(t, (F,), t)])
        with pytest.raises(ReplayError):
            replay(forged)


class TestStrategies:
    def test_leftmost_discards_divergent_argument(self, term):
        run = run_strategy(term(f"(\\x. y) ({OMEGA})"), Strategy.LEFTMOST, fuel=10)
        assert run.normal_form
        assert run.path.length == 1
        assert alpha_eq(run.path.target, term("y"))

    def test_innermost_exhausts_fuel_on_divergent_argument(self, term):
        run = run_strategy(term(f"(\\x. y) ({OMEGA})"), Strategy.INNERMOST, fuel=10)
        assert run.fuel_exhausted
        assert not run.normal_form
        assert run.path.length == 10

    def test_omega(self, term):
        run = run_strategy(term(OMEGA), Strategy.LEFTMOST, fuel=10)
        assert run.fuel_exhausted
        assert run.path.length == 10

    def test_gross_knuth_counts_macro_steps(self, term):
        run = run_strategy(term("(\\x. x) ((\\y. y) z)"), Strategy.GROSS_KNUTH, fuel=1)
        assert run.macro_steps == 1
        assert run.path.length == 2
        assert run.normal_form
        assert not run.fuel_exhausted

    def test_random_is_seeded(self, term):
        t = term("(\\x. x x) ((\\y. y) ((\\w. w) z))")
        first = run_strategy(t, Strategy.RANDOM, fuel=20, rng=random.Random(7))
        second = run_strategy(t, Strategy.RANDOM, fuel=20, rng=random.Random(7))
        assert [s.redex for s in first.path.steps] == [s.redex for s in second.path.steps]
        assert alpha_eq(first.path.target, term("z z"))

    def test_negative_fuel(self, term):
        with pytest.raises(InputError):
            run_strategy(term(SHARED), Strategy.LEFTMOST, fuel=-1)

    def test_normalize(self, term):
        assert alpha_eq(normalize(term(SHARED)).target, term("z z"))

    def test_normalize_respects_path_cap(self, term):
        with pytest.raises(ResourceCapError):
            normalize(term(OMEGA), limits=ResourceLimits(path_length_cap=5))
