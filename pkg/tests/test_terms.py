"""
Tests for the term core.
"""

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from crjoin.exceptions import InvalidPositionError
from crjoin.terms.core import (
    SubtermRelation,
    alpha_eq,
    close,
    free_names,
    free_occurrences,
    open_lam,
    redexes,
    replace_at,
    shift,
    substitute,
    subterm_at,
    subterm_relation,
)
from crjoin.terms.models import (
    App,
    Bound,
    Branch,
    Lam,
    Var,
    format_position,
    parse_position,
    position_letters,
)

from .strategies import FREE_NAMES, terms

F, A, B = Branch.FUN, Branch.ARG, Branch.BODY


class TestSize:
    def test_variable(self):
        assert Var("x").size == 1

    def test_identity(self, term):
        assert term("\\x. x").size == 2

    def test_application(self, term):
        assert term("(\\x. x x) y").size == 6

    def test_size_is_cached_on_deep_spines(self):
        t = Var("q")
        for _ in range(50_000):
            t = App(Var("p"), t)
        assert t.size == 100_001


class TestAlphaEquality:
    def test_renamed_binders_are_equal(self, term):
        assert alpha_eq(term("\\x. \\y. x y"), term("\\a. \\b. a b"))

    def test_free_names_matter(self, term):
        assert not alpha_eq(term("\\x. y"), term("\\x. z"))

    def test_binder_structure_matters(self, term):
        assert not alpha_eq(term("\\x. \\y. x"), term("\\x. \\y. y"))

    def test_deep_terms_compare_without_recursion(self):
        left, right = Var("q"), Var("q")
        for _ in range(100_000):
            left, right = App(Var("p"), left), App(Var("p"), right)
        assert left == right

    @given(terms())
    def test_reflexive(self, t):
        assert alpha_eq(t, t)
        assert hash(t) == t.digest


class TestFreeVariables:
    def test_free_occurrences_skip_bound_ones(self, term):
        assert free_occurrences(term("x (\\x. x) x"), "x") == 2

    def test_free_names(self, term):
        assert free_names(term("\\x. x y (\\z. w)")) == {"y", "w"}


class TestSubstitution:
    def test_duplicating_substitution(self, term):
        result = substitute(term("x x"), "x", term("\\y. y"))
        assert alpha_eq(result, term("(\\y. y) (\\y. y)"))
        assert result.size == 5

    def test_substitution_avoids_capture(self, term):
        result = substitute(term("\\y. x"), "x", Var("y"))
        assert alpha_eq(result, term("\\z. y"))
        assert not alpha_eq(result, term("\\y. y"))

    def test_substitution_under_binders_shifts_open_terms(self):
        # λ.(x 0) with x := the bound index of an outer binder
        inner = Lam(App(Var("x"), Bound(0)))
        result = substitute(inner, "x", Bound(0))
        assert result == Lam(App(Bound(1), Bound(0)))

    def test_absent_variable_returns_the_same_object(self, term):
        t = term("\\y. y z")
        assert substitute(t, "x", Var("w")) is t

    @settings(max_examples=200)
    @given(terms(), terms(), st.sampled_from(FREE_NAMES))
    def test_size_identity(self, m, n, x):
        result = substitute(m, x, n)
        assert result.size == m.size + free_occurrences(m, x) * (n.size - 1)

    @given(terms())
    def test_identity_substitution(self, m):
        assert alpha_eq(substitute(m, "a", Var("a")), m)


class TestRedexes:
    def test_nested_redexes(self, term):
        found = redexes(term("(\\x. x) ((\\y. y) z)"))
        assert [position_letters(p) for p in found.ordered()] == ["", "A"]

    def test_normal_form_has_none(self, term):
        assert not redexes(term("\\x. x (\\y. y)"))

    @settings(max_examples=200)
    @given(terms(20))
    def test_count_bound(self, t):
        count = len(redexes(t))
        assert count == t.redex_count
        if t.size < 4:
            assert count == 0
        else:
            assert count <= t.size // 2 - 1


class TestPositions:
    def test_format(self):
        assert format_position((F, B)) == "Fun.Body"
        assert format_position(()) == "root"
        assert position_letters((F, B)) == "FB"

    def test_parse_accepts_both_forms(self):
        assert parse_position("FB") == parse_position("Fun.Body") == (F, B)
        assert parse_position("root") == ()
        assert parse_position("") == ()

    def test_parse_rejects_unknown_steps(self):
        with pytest.raises(ValueError):
            parse_position("Q")
        with pytest.raises(ValueError):
            parse_position("Fun.Left")

    def test_subterm_at(self, term):
        t = term("(\\x. x) y")
        assert subterm_at(t, (F, B)) == Bound(0)
        assert subterm_at(t, (A,)) == Var("y")

    def test_invalid_position(self):
        with pytest.raises(InvalidPositionError):
            subterm_at(Var("x"), (F,))
        with pytest.raises(InvalidPositionError):
            replace_at(Var("x"), (B,), Var("y"))

    def test_replace_at(self, term):
        t = term("(\\x. x) y")
        assert alpha_eq(replace_at(t, (A,), Var("z")), term("(\\x. x) z"))
        assert replace_at(t, (), Var("z")) == Var("z")

    def test_subterm_relation(self):
        assert subterm_relation((F,), (F,)) is SubtermRelation.EQUAL
        assert subterm_relation((F, B), (F,)) is SubtermRelation.P_INSIDE_Q
        assert subterm_relation((F,), (F, B)) is SubtermRelation.Q_INSIDE_P
        assert subterm_relation((F,), (A,)) is SubtermRelation.DISJOINT


class TestLocallyNameless:
    def test_open_then_close(self, term):
        lam = term("\\x. \\y. x y w")
        assert close(open_lam(lam, "#0"), "#0") == lam.body

    def test_shift_leaves_closed_terms_alone(self, term):
        t = term("\\x. x")
        assert shift(t, 3) is t

    def test_negative_index_is_rejected(self):
        with pytest.raises(ValueError):
            Bound(-1)
