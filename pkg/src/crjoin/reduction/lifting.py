"""
Constructive path builders: cofinality, monotonicity and substitution.

All builders work on locally closed terms. Going under a binder opens it
with a fresh free name (``#0``, ``#1``, …, never produced by the parser)
and closes the resulting path again, so reductions never see loose
de Bruijn indices.
"""

import itertools
import logging
from typing import Dict, Tuple

from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import InputError, ReplayError
from ..terms.core import (
    alpha_eq,
    close,
    open_lam,
    redexes,
    replace_at,
    substitute,
    variable_positions,
)
from ..terms.models import ROOT, App, Branch, Lam, Position, Term
from .models import ReductionPath, Step
from .steps import contract, develop, residual_positions, takahashi_star

logger = logging.getLogger(__name__)


def _memoized(transform):
    """Wrap a Term -> Term function with an identity-keyed cache."""
    cache: Dict[int, Tuple[Term, Term]] = {}

    def apply(t: Term) -> Term:
        hit = cache.get(id(t))
        if hit is not None and hit[0] is t:
            return hit[1]
        result = transform(t)
        cache[id(t)] = (t, result)
        return result

    return apply


def map_path(path: ReductionPath, transform, prefix: Position) -> ReductionPath:
    """Push ``path`` into a context.

    ``transform`` maps each term of the path to the enclosing term and
    ``prefix`` is the position of the hole.
    """
    wrap = _memoized(transform)
    steps = tuple(
        Step(wrap(step.source), prefix + step.redex, wrap(step.target))
        for step in path.steps
    )
    return ReductionPath(wrap(path.source), steps)


def under_lam(path: ReductionPath, name: str, hint: str) -> ReductionPath:
    """λname. path, closing the fresh name back into a bound variable."""
    return map_path(path, lambda t: Lam(close(t, name), hint), (Branch.BODY,))


def in_fun(path: ReductionPath, arg: Term) -> ReductionPath:
    return map_path(path, lambda t: App(t, arg), (Branch.FUN,))


def in_arg(fun: Term, path: ReductionPath) -> ReductionPath:
    return map_path(path, lambda t: App(fun, t), (Branch.ARG,))


def inside(term: Term, position: Position, path: ReductionPath) -> ReductionPath:
    """Run ``path`` on the locally closed subterm of ``term`` at ``position``."""
    steps = []
    current = term
    for step in path.steps:
        following = replace_at(current, position, step.target)
        steps.append(Step(current, position + step.redex, following))
        current = following
    return ReductionPath(term, tuple(steps))


def substitute_path(path: ReductionPath, x: str, n: Term) -> ReductionPath:
    """Apply [x:=n] to every term of ``path``; redex positions are unchanged."""
    return map_path(path, lambda t: substitute(t, x, n), ())


class PathLifter:
    """Builds cofinal, monotone and substitution paths.

    One lifter serves one construction: it owns the fresh-name supply and
    an identity-keyed cache of Takahashi translations.
    """

    def __init__(self, limits: ResourceLimits = DEFAULT_LIMITS):
        """
        Initialize the lifter.

        Args:
            limits: Resource caps applied to every produced term and path
        """
        self.limits = limits
        self._names = itertools.count()
        self._stars: Dict[int, Tuple[Term, Term]] = {}

    def fresh(self) -> str:
        return f"#{next(self._names)}"

    def star(self, t: Term) -> Term:
        hit = self._stars.get(id(t))
        if hit is not None and hit[0] is t:
            return hit[1]
        result = takahashi_star(t, self.limits)
        self._stars[id(t)] = (t, result)
        return result

    def star_iter(self, t: Term, n: int) -> Term:
        for _ in range(n):
            t = self.star(t)
        return t

    def _check(self, path: ReductionPath) -> ReductionPath:
        self.limits.check_path_length(path.length)
        return path

    # Substitution composition

    def substitution_path(self, p1: ReductionPath, x: str, p2: ReductionPath) -> ReductionPath:
        """
        M₁[x:=M₂] ↠ N₁[x:=N₂] from M₁ ↠ N₁ and M₂ ↠ N₂.

        Every substituted copy of M₂ is reduced first (left to right), then
        ``p1`` runs under [x:=N₂]. The length is exactly
        l₁ + ♯(x∈M₁)·l₂.
        """
        m1 = p1.source
        start = substitute(m1, x, p2.source)
        path = ReductionPath.empty(start)
        if p2.steps:
            for position in variable_positions(m1, x):
                path = path.then(inside(path.target, position, p2))
                self._check(path)
        path = path.then(substitute_path(p1, x, p2.target))
        return self._check(path)

    # StarSubst

    def star_subst_path(self, m: Term, x: str, n: Term) -> ReductionPath:
        """M*[x:=N*] ↠ (M[x:=N])*, by structural recursion on M."""
        if not isinstance(m, (App, Lam)):
            if getattr(m, "name", None) == x:
                return ReductionPath.empty(self.star(n))
            return ReductionPath.empty(m)

        if isinstance(m, Lam):
            z = self.fresh()
            inner = self.star_subst_path(open_lam(m, z), x, n)
            return under_lam(inner, z, m.hint)

        if isinstance(m.fun, Lam):
            y = self.fresh()
            body_path = self.star_subst_path(open_lam(m.fun, y), x, n)
            arg_path = self.star_subst_path(m.arg, x, n)
            return self.substitution_path(body_path, y, arg_path)

        fun_path = self.star_subst_path(m.fun, x, n)
        arg_path = self.star_subst_path(m.arg, x, n)
        path = in_fun(fun_path, arg_path.source).then(in_arg(fun_path.target, arg_path))
        if getattr(m.fun, "name", None) == x and isinstance(n, Lam):
            # x N' with x := λz.P creates a redex the translation contracts
            path = path.extend(contract(path.target, ROOT, self.limits))
        return self._check(path)

    # Monotonicity

    def _mono(self, step: Step) -> ReductionPath:
        source, position, target = step.source, step.redex, step.target
        if not position:
            z = self.fresh()
            return self.star_subst_path(open_lam(source.fun, z), z, source.arg)

        head, rest = position[0], position[1:]
        if head is Branch.BODY:
            z = self.fresh()
            inner = self._mono(Step(open_lam(source, z), rest, open_lam(target, z)))
            return under_lam(inner, z, source.hint)

        fun, arg = source.fun, source.arg
        if head is Branch.FUN:
            if isinstance(fun, Lam):
                # rest = Body.…: the step happens inside the abstraction body
                z = self.fresh()
                inner = self._mono(
                    Step(open_lam(fun, z), rest[1:], open_lam(target.fun, z))
                )
                return self.substitution_path(inner, z, ReductionPath.empty(self.star(arg)))
            inner = self._mono(Step(fun, rest, target.fun))
            path = in_fun(inner, self.star(arg))
            if isinstance(target.fun, Lam):
                path = path.extend(contract(path.target, ROOT, self.limits))
            return self._check(path)

        inner = self._mono(Step(arg, rest, target.arg))
        if isinstance(fun, Lam):
            z = self.fresh()
            return self.substitution_path(
                ReductionPath.empty(self.star(open_lam(fun, z))), z, inner
            )
        return in_arg(self.star(fun), inner)

    def mono_lift(self, step: Step) -> ReductionPath:
        """M* ↠ N* for a step M → N."""
        path = self._mono(step)
        expected_source, expected_target = self.star(step.source), self.star(step.target)
        if not alpha_eq(path.source, expected_source):
            raise ReplayError("monotone lift does not start at M*")
        if not alpha_eq(path.target, expected_target):
            raise ReplayError("monotone lift does not end at N*")
        return self._check(ReductionPath(expected_source, path.steps))

    def mono_lift_path(self, path: ReductionPath, n: int) -> ReductionPath:
        """M^{n*} ↠ N^{n*}, lifting ``path`` one level at a time."""
        current = path
        for level in range(n):
            lifted = ReductionPath.empty(self.star(current.source))
            for step in current.steps:
                lifted = self._check(lifted.then(self.mono_lift(step)))
            logger.debug(f"lifted level {level + 1}: {current.length} -> {lifted.length} steps")
            current = lifted
        return current

    # Cofinality

    def cofinal_step(self, step: Step) -> ReductionPath:
        """N ↠ M* for a step M → N, developing the residuals of Redex(M)."""
        marks = residual_positions(step.source, redexes(step.source).positions, step.redex)
        path = develop(step.target, marks, self.limits)
        if not alpha_eq(path.target, self.star(step.source)):
            raise ReplayError("development of residuals does not end at M*")
        return path

    def complete_development(self, path: ReductionPath) -> ReductionPath:
        """Continue a development of Redex(M) from its endpoint to M*."""
        marks = redexes(path.source).positions
        for index, step in enumerate(path.steps):
            if step.redex not in marks:
                raise InputError(f"step {index} contracts a redex not traced from the source")
            marks = residual_positions(step.source, marks, step.redex)
        completion = develop(path.target, marks, self.limits)
        if not alpha_eq(completion.target, self.star(path.source)):
            raise ReplayError("completed development does not end at M*")
        return completion

    def cofinal_path(self, path: ReductionPath) -> ReductionPath:
        """N ↠ M^{n*} for a path M ↠ⁿ N."""
        back = ReductionPath.empty(path.source)
        for step in path.steps:
            back = self.cofinal_step(step).then(self.mono_lift_path(back, 1))
            self._check(back)
        return back


def star_subst_path(
    m: Term, x: str, n: Term, limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    return PathLifter(limits).star_subst_path(m, x, n)


def substitution_path(
    p1: ReductionPath, x: str, p2: ReductionPath, limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    return PathLifter(limits).substitution_path(p1, x, p2)


def mono_lift(step: Step, limits: ResourceLimits = DEFAULT_LIMITS) -> ReductionPath:
    return PathLifter(limits).mono_lift(step)


def mono_lift_path(
    path: ReductionPath, n: int, limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    return PathLifter(limits).mono_lift_path(path, n)


def cofinal_step(step: Step, limits: ResourceLimits = DEFAULT_LIMITS) -> ReductionPath:
    return PathLifter(limits).cofinal_step(step)


def cofinal_path(path: ReductionPath, limits: ResourceLimits = DEFAULT_LIMITS) -> ReductionPath:
    return PathLifter(limits).cofinal_path(path)


def complete_development(
    path: ReductionPath, limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    return PathLifter(limits).complete_development(path)
