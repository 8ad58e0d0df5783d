"""
β-contraction, Takahashi translation, residuals and developments.
"""

import logging
from typing import Dict, FrozenSet, Iterable, List, Optional, Set, Tuple

from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import InputError, InvalidPositionError, ReplayError
from ..terms.core import (
    SubtermRelation,
    alpha_eq,
    binder_occurrences,
    instantiate,
    redexes,
    replace_at,
    subterm_at,
    subterm_relation,
)
from ..terms.models import App, Branch, Lam, Position, RedexSet, Term, format_position
from .models import MarkedTerm, ReductionPath, Step

logger = logging.getLogger(__name__)


def contract(t: Term, p: Position, limits: ResourceLimits = DEFAULT_LIMITS) -> Step:
    """
    Contract the redex of ``t`` at ``p``.

    Args:
        t: Source term
        p: Position of a redex (λx.M)N in ``t``
        limits: Resource caps

    Returns:
        Step: ``t → t[p := M[x:=N]]``
    """
    node = subterm_at(t, p)
    if not (isinstance(node, App) and isinstance(node.fun, Lam)):
        raise InvalidPositionError(f"Position {format_position(p)} is not a redex")
    contractum = instantiate(node.fun.body, node.arg)
    target = replace_at(t, tuple(p), contractum)
    limits.check_term_size(target.size)
    return Step(t, tuple(p), target)


def takahashi_star(t: Term, limits: ResourceLimits = DEFAULT_LIMITS) -> Term:
    """M*: contract every redex of ``t`` simultaneously.

    x* = x, (λx.M)* = λx.M*, ((λx.M)N)* = M*[x:=N*], (MN)* = M*N* otherwise.
    """
    memo: Dict[int, Tuple[Term, Term]] = {}

    def star(node: Term) -> Term:
        hit = memo.get(id(node))
        if hit is not None and hit[0] is node:
            return hit[1]
        if node.redex_count == 0:
            result = node
        elif isinstance(node, Lam):
            result = Lam(star(node.body), node.hint)
        elif isinstance(node.fun, Lam):
            result = instantiate(star(node.fun.body), star(node.arg))
        else:
            result = App(star(node.fun), star(node.arg))
        memo[id(node)] = (node, result)
        return result

    result = star(t)
    limits.check_term_size(result.size)
    return result


def star_iter(t: Term, n: int, limits: ResourceLimits = DEFAULT_LIMITS) -> Term:
    """M^{n*}, the n-fold Takahashi translation."""
    if n < 0:
        raise InputError("iteration count cannot be negative")
    current = t
    for _ in range(n):
        if current.redex_count == 0:
            break
        current = takahashi_star(current, limits)
    return current


def residual_positions(
    term: Term, marks: Iterable[Position], r: Position
) -> FrozenSet[Position]:
    """Positions of the residuals of ``marks`` after contracting ``r``.

    The six cases of the residual definition: disjoint and enclosing marks
    stay put, the contracted redex vanishes, marks in the abstraction body
    move up to ``r``, and marks in the argument are copied to every
    substituted occurrence.
    """
    r = tuple(r)
    node = subterm_at(term, r)
    if not (isinstance(node, App) and isinstance(node.fun, Lam)):
        raise InvalidPositionError(f"Position {format_position(r)} is not a redex")

    occurrences: Optional[List[Position]] = None
    result: Set[Position] = set()
    depth = len(r)
    for s in marks:
        s = tuple(s)
        relation = subterm_relation(s, r)
        if relation is SubtermRelation.EQUAL:
            continue
        if relation is not SubtermRelation.P_INSIDE_Q:
            result.add(s)
            continue
        suffix = s[depth:]
        if suffix[0] is Branch.FUN:
            # suffix = Fun.Body.u; the body now sits at r
            result.add(r + suffix[2:])
        else:
            if occurrences is None:
                occurrences = binder_occurrences(node.fun.body)
            for v in occurrences:
                result.add(r + v + suffix[1:])
    return frozenset(result)


def residuals(marked: MarkedTerm, r: Position) -> RedexSet:
    """Res(marks / r : M → N) as positions in the contractum."""
    return RedexSet(residual_positions(marked.term, marked.marks.positions, r))


def _least_minimal(marks: FrozenSet[Position]) -> Position:
    """Lexicographically least mark containing no other mark.

    In sorted order every extension of a position follows it immediately,
    so a mark is minimal iff its successor does not extend it.
    """
    ordered = sorted(marks)
    for current, following in zip(ordered, ordered[1:]):
        if following[: len(current)] != current:
            return current
    return ordered[-1]


def develop(
    term: Term, marks: Iterable[Position], limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    """Minimal (inside-out) complete development of ``marks`` in ``term``."""
    pending = frozenset(tuple(m) for m in marks)
    steps: List[Step] = []
    current = term
    while pending:
        chosen = _least_minimal(pending)
        step = contract(current, chosen, limits)
        pending = residual_positions(current, pending, chosen)
        steps.append(step)
        limits.check_path_length(len(steps))
        current = step.target
    return ReductionPath(term, tuple(steps))


def minimal_complete_development(
    marked: MarkedTerm, limits: ResourceLimits = DEFAULT_LIMITS
) -> ReductionPath:
    """Complete development contracting a minimal marked redex each step."""
    return develop(marked.term, marked.marks.positions, limits)


def gross_knuth_path(t: Term, limits: ResourceLimits = DEFAULT_LIMITS) -> ReductionPath:
    """M ↠ M* by developing all of Redex(M)."""
    return develop(t, redexes(t).positions, limits)


def star_iter_path(t: Term, n: int, limits: ResourceLimits = DEFAULT_LIMITS) -> ReductionPath:
    """M ↠ M^{n*} as n consecutive Gross-Knuth developments."""
    path = ReductionPath.empty(t)
    for _ in range(n):
        if path.target.redex_count == 0:
            break
        path = path.then(gross_knuth_path(path.target, limits))
        limits.check_path_length(path.length)
    return path


def new_redexes(s: Step) -> RedexSet:
    """Redexes of ``s.target`` that are not residuals of Redex(s.source)."""
    old = residual_positions(s.source, redexes(s.source).positions, s.redex)
    return RedexSet(redexes(s.target).positions - old)


def count_new_redex_contractions(p: ReductionPath) -> int:
    """Number of steps contracting a redex that does not descend from M₀."""
    old = redexes(p.source).positions
    count = 0
    for step in p.steps:
        if step.redex not in old:
            count += 1
        old = residual_positions(step.source, old, step.redex)
    return count


def development_segments(p: ReductionPath) -> List[ReductionPath]:
    """Split ``p`` into maximal developments.

    A new segment starts whenever a step contracts a redex that is not a
    residual of the redexes present at the current segment's start.
    """
    segments: List[ReductionPath] = []
    start = p.source
    current: List[Step] = []
    traced = redexes(start).positions
    for step in p.steps:
        if step.redex not in traced:
            segments.append(ReductionPath(start, tuple(current)))
            start = step.source
            current = []
            traced = redexes(start).positions
        current.append(step)
        traced = residual_positions(step.source, traced, step.redex)
    segments.append(ReductionPath(start, tuple(current)))
    return segments


def replay(path: ReductionPath, limits: ResourceLimits = DEFAULT_LIMITS) -> None:
    """Re-execute every contraction of ``path``; raise ReplayError on mismatch."""
    current = path.source
    for index, step in enumerate(path.steps):
        if not alpha_eq(step.source, current):
            raise ReplayError(f"step {index} does not start where step {index - 1} ended")
        try:
            redone = contract(current, step.redex, limits)
        except InvalidPositionError as exc:
            raise ReplayError(f"step {index}: {exc}") from exc
        if not alpha_eq(redone.target, step.target):
            raise ReplayError(f"step {index}: contraction does not reproduce the target")
        current = step.target
