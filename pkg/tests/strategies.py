"""
Hypothesis strategies for small λ-terms.
"""

from hypothesis import strategies as st

from crjoin.terms.models import App, Bound, Lam, Term, Var

FREE_NAMES = ("a", "b", "c")
HINTS = ("x", "y", "z", "a")


@st.composite
def sized_terms(draw, budget: int, depth: int = 0) -> Term:
    kinds = ["variable"]
    if budget >= 2:
        kinds.append("abstraction")
    if budget >= 3:
        kinds.append("application")
    kind = draw(st.sampled_from(kinds))
    if kind == "variable":
        choices = [Var(name) for name in FREE_NAMES] + [Bound(i) for i in range(depth)]
        return draw(st.sampled_from(choices))
    if kind == "abstraction":
        return Lam(draw(sized_terms(budget - 1, depth + 1)), draw(st.sampled_from(HINTS)))
    fun_budget = draw(st.integers(min_value=1, max_value=budget - 2))
    fun = draw(sized_terms(fun_budget, depth))
    arg = draw(sized_terms(budget - 1 - fun_budget, depth))
    return App(fun, arg)


def terms(max_size: int = 12):
    """Locally closed terms of size at most ``max_size``."""
    return st.integers(min_value=1, max_value=max_size).flatmap(sized_terms)


def redex_terms(max_size: int = 12):
    """Terms with at least one redex."""
    return terms(max_size).map(lambda t: t if t.redex_count else App(Lam(Bound(0), "x"), t))
