"""
Random instances for the property harness: terms, paths, chains and peaks.

Every generator draws from an explicit ``random.Random`` so a case is
reproduced from its seed alone.

Left links of random chains are built directly as β-expansions of the
current term (see ``beta_expansion``) rather than by searching for a
term that reduces to it. Every generated chain is validated link by link
before it is returned, so a faulty expansion fails at generation time.
"""

import logging
import random
from dataclasses import dataclass
from typing import Optional, Sequence, Tuple

from ..config import DEFAULT_LIMITS, ResourceLimits
from ..join.chains import validate_chain
from ..join.models import EqualityChain
from ..reduction.models import Arrow, ReductionPath, Step
from ..reduction.steps import contract
from ..terms.core import binder_depth, find_positions, redexes, replace_at, shift, subterm_at
from ..terms.models import App, Bound, Lam, Position, Term, Var

logger = logging.getLogger(__name__)

BINDER_HINTS = ("x", "y", "z", "u", "v", "w")


@dataclass(frozen=True)
class TermWeights:
    """Relative weights of the three term constructors."""

    abstraction: int = 3
    application: int = 4
    variable: int = 3


class TermGenerator:
    """Size-bounded random λ-terms over a pool of free names."""

    def __init__(
        self,
        rng: random.Random,
        free_variables: Sequence[str] = ("a", "b", "c"),
        weights: TermWeights = TermWeights(),
    ):
        self.rng = rng
        self.free_variables = tuple(free_variables)
        self.weights = weights

    def term(self, max_size: int) -> Term:
        """A locally closed term of size at most ``max_size``."""
        return self._generate(self.rng.randint(1, max_size), 0)

    def _variable(self, depth: int) -> Term:
        choice = self.rng.randrange(len(self.free_variables) + depth)
        if choice < depth:
            return Bound(choice)
        return Var(self.free_variables[choice - depth])

    def _generate(self, budget: int, depth: int) -> Term:
        kinds = [("variable", self.weights.variable)]
        if budget >= 2:
            kinds.append(("abstraction", self.weights.abstraction))
        if budget >= 3:
            kinds.append(("application", self.weights.application))
        kinds = [(kind, weight) for kind, weight in kinds if weight > 0] or [("variable", 1)]
        kind = self.rng.choices([k for k, _ in kinds], weights=[w for _, w in kinds])[0]

        if kind == "variable":
            return self._variable(depth)
        if kind == "abstraction":
            body = self._generate(budget - 1, depth + 1)
            return Lam(body, BINDER_HINTS[depth % len(BINDER_HINTS)])
        fun_budget = self.rng.randint(1, budget - 2)
        fun = self._generate(fun_budget, depth)
        arg = self._generate(budget - 1 - fun_budget, depth)
        return App(fun, arg)

    def term_with_redex(self, max_size: int, attempts: int = 20) -> Term:
        """A term containing at least one redex.

        After ``attempts`` redex-free draws the last one is wrapped as (λx.x) t.
        """
        t = self.term(max_size)
        for _ in range(attempts - 1):
            if t.redex_count:
                return t
            t = self.term(max_size)
        return t if t.redex_count else App(Lam(Bound(0), "x"), t)


def random_step(
    rng: random.Random, t: Term, limits: ResourceLimits = DEFAULT_LIMITS
) -> Optional[Step]:
    """Contract a uniformly chosen redex of ``t``; None for a normal form."""
    positions = redexes(t).ordered()
    if not positions:
        return None
    return contract(t, rng.choice(positions), limits)


def random_path(
    rng: random.Random, t: Term, length: int, limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    """Up to ``length`` random steps from ``t``; stops early at a normal form."""
    path = ReductionPath.empty(t)
    for _ in range(length):
        step = random_step(rng, path.target, limits)
        if step is None:
            break
        path = path.extend(step)
    return path


def _all_positions(t: Term):
    return find_positions(t, lambda _node, _depth: True)


def beta_expansion(
    rng: random.Random, n: Term, generator: TermGenerator
) -> Tuple[Term, Position]:
    """
    A term M with a redex at the returned position whose contraction is ``n``.

    Three expansions are used: wrapping a subterm S as (λx.x) S, a vacuous
    (λx.S) Q, or abstracting a locally closed occurrence T inside S as
    (λx.S[T:=x]) T.
    """
    position = rng.choice(_all_positions(n))
    s = subterm_at(n, position)
    kind = rng.choice(("identity", "vacuous", "abstract"))

    if kind == "abstract":
        closed = [
            relative
            for relative in _all_positions(s)
            if subterm_at(s, relative).loose == 0
        ]
        if closed:
            relative = rng.choice(closed)
            t = subterm_at(s, relative)
            body = replace_at(shift(s, 1), relative, Bound(binder_depth(s, relative)))
            return replace_at(n, position, App(Lam(body, "x"), t)), position
        kind = "vacuous"

    if kind == "vacuous":
        q = generator.term(3)
        return replace_at(n, position, App(Lam(shift(s, 1), "x"), q)), position
    return replace_at(n, position, App(Lam(Bound(0), "x"), s)), position


def random_chain(
    rng: random.Random,
    start: Term,
    length: int,
    generator: TermGenerator,
    limits: ResourceLimits = DEFAULT_LIMITS,
) -> EqualityChain:
    """
    A valid chain of ``length`` links from ``start``.

    Right links contract a random redex of the current term; Left links
    β-expand it. A Right link falls back to Left at a normal form. The
    chain is replayed before it is returned.
    """
    terms = [start]
    arrows = []
    witnesses = []
    for _ in range(length):
        current = terms[-1]
        step = random_step(rng, current, limits) if rng.random() < 0.5 else None
        if step is not None:
            terms.append(step.target)
            arrows.append(Arrow.RIGHT)
            witnesses.append(step.redex)
            continue
        expanded, position = beta_expansion(rng, current, generator)
        limits.check_term_size(expanded.size)
        terms.append(expanded)
        arrows.append(Arrow.LEFT)
        witnesses.append(position)

    chain = EqualityChain(tuple(terms), tuple(arrows), tuple(witnesses))
    validate_chain(chain, limits)
    return chain


def random_peak(
    rng: random.Random,
    start: Term,
    max_length: int,
    limits: ResourceLimits = DEFAULT_LIMITS,
) -> Tuple[ReductionPath, ReductionPath]:
    """Two random paths from ``start``, the shorter one first."""
    first = random_path(rng, start, rng.randint(1, max_length), limits)
    second = random_path(rng, start, rng.randint(1, max_length), limits)
    if first.length > second.length:
        first, second = second, first
    return first, second
