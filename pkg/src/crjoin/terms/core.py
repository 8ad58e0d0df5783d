"""
Term-core operations: size, substitution, free-variable accounting, redex
enumeration, positions and α-equality.

Substitution-like operations recurse over the term and return shared
subterms untouched whenever the cached loose-index depth shows nothing
below can change. Traversals that only read (redex enumeration, counting,
position lookup) use explicit stacks.
"""

import logging
from enum import Enum
from typing import Callable, List, Set

from ..exceptions import InvalidPositionError
from .models import (
    App,
    Bound,
    Branch,
    Lam,
    Position,
    RedexSet,
    Term,
    Var,
    format_position,
    structurally_equal,
)

logger = logging.getLogger(__name__)


class SubtermRelation(Enum):
    """Relative placement of two positions in the same term."""

    EQUAL = "equal"
    P_INSIDE_Q = "p-inside-q"
    Q_INSIDE_P = "q-inside-p"
    DISJOINT = "disjoint"


def size(t: Term) -> int:
    """|x| = 1, |λx.M| = 1 + |M|, |MN| = 1 + |M| + |N|."""
    return t.size


def alpha_eq(a: Term, b: Term) -> bool:
    """True iff ``a`` and ``b`` differ at most by renaming bound variables."""
    return structurally_equal(a, b)


def free_names(t: Term) -> Set[str]:
    """Names of all free variables of ``t``."""
    names: Set[str] = set()
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            names.add(node.name)
        elif isinstance(node, Lam):
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
    return names


def free_occurrences(t: Term, x: str) -> int:
    """♯(x ∈ t): number of free occurrences of ``x``."""
    count = 0
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, Var):
            if node.name == x:
                count += 1
        elif isinstance(node, Lam):
            stack.append(node.body)
        elif isinstance(node, App):
            stack.append(node.arg)
            stack.append(node.fun)
    return count


def shift(t: Term, amount: int, cutoff: int = 0) -> Term:
    """Add ``amount`` to every bound index of ``t`` that is >= ``cutoff``."""
    if amount == 0 or t.loose <= cutoff:
        return t
    if isinstance(t, Bound):
        return Bound(t.index + amount)
    if isinstance(t, Lam):
        return Lam(shift(t.body, amount, cutoff + 1), t.hint)
    return App(shift(t.fun, amount, cutoff), shift(t.arg, amount, cutoff))


def instantiate(body: Term, arg: Term, depth: int = 0) -> Term:
    """Substitute ``arg`` for the bound index ``depth`` in ``body``.

    This is the nameless reading of M[x:=N] for the body of ``λx.M``.
    Indices above ``depth`` are lowered by one since the binder disappears.
    """
    if body.loose <= depth:
        return body
    if isinstance(body, Bound):
        if body.index == depth:
            return shift(arg, depth)
        return Bound(body.index - 1)
    if isinstance(body, Lam):
        return Lam(instantiate(body.body, arg, depth + 1), body.hint)
    return App(instantiate(body.fun, arg, depth), instantiate(body.arg, arg, depth))


def open_lam(lam: Lam, name: str) -> Term:
    """Body of ``lam`` with its bound variable replaced by the free ``name``."""
    return instantiate(lam.body, Var(name))


def close(t: Term, name: str, depth: int = 0) -> Term:
    """Abstract the free variable ``name``; inverse of :func:`open_lam`.

    ``Lam(close(open_lam(l, n), n), l.hint)`` is ``l`` whenever ``n`` is not
    free in ``l``.
    """
    if isinstance(t, Var):
        return Bound(depth) if t.name == name else t
    if isinstance(t, Bound):
        return Bound(t.index + 1) if t.index >= depth else t
    if isinstance(t, Lam):
        return Lam(close(t.body, name, depth + 1), t.hint)
    fun = close(t.fun, name, depth)
    arg = close(t.arg, name, depth)
    if fun is t.fun and arg is t.arg:
        return t
    return App(fun, arg)


def substitute(m: Term, x: str, n: Term) -> Term:
    """Capture-avoiding substitution M[x:=N] of a free variable.

    Binders are nameless, so capture cannot happen; ``n`` is shifted past
    every binder it is pushed under.
    """

    def go(t: Term, depth: int) -> Term:
        if isinstance(t, Var):
            return shift(n, depth) if t.name == x else t
        if isinstance(t, Bound):
            return t
        if isinstance(t, Lam):
            body = go(t.body, depth + 1)
            return t if body is t.body else Lam(body, t.hint)
        fun = go(t.fun, depth)
        arg = go(t.arg, depth)
        if fun is t.fun and arg is t.arg:
            return t
        return App(fun, arg)

    return go(m, 0)


def redexes(t: Term) -> RedexSet:
    """Redex(t): every position of a subterm of shape (λx.P)Q."""
    found: List[Position] = []
    stack = [(t, ())]
    while stack:
        node, position = stack.pop()
        if node.redex_count == 0:
            continue
        if isinstance(node, Lam):
            stack.append((node.body, position + (Branch.BODY,)))
        elif isinstance(node, App):
            if isinstance(node.fun, Lam):
                found.append(position)
            stack.append((node.arg, position + (Branch.ARG,)))
            stack.append((node.fun, position + (Branch.FUN,)))
    return RedexSet.of(found)


def subterm_relation(p: Position, q: Position) -> SubtermRelation:
    """Compare two positions of the same term by path prefix."""
    p, q = tuple(p), tuple(q)
    if p == q:
        return SubtermRelation.EQUAL
    if p[: len(q)] == q:
        return SubtermRelation.P_INSIDE_Q
    if q[: len(p)] == p:
        return SubtermRelation.Q_INSIDE_P
    return SubtermRelation.DISJOINT


def _child(node: Term, branch: Branch) -> Term:
    if branch is Branch.BODY and isinstance(node, Lam):
        return node.body
    if branch is Branch.FUN and isinstance(node, App):
        return node.fun
    if branch is Branch.ARG and isinstance(node, App):
        return node.arg
    raise KeyError(branch)


def is_valid_position(t: Term, position: Position) -> bool:
    node = t
    for branch in position:
        try:
            node = _child(node, branch)
        except KeyError:
            return False
    return True


def subterm_at(t: Term, position: Position) -> Term:
    """The subterm of ``t`` at ``position``."""
    node = t
    for branch in position:
        try:
            node = _child(node, branch)
        except KeyError:
            raise InvalidPositionError(
                f"Position {format_position(position)} is not valid for this term"
            ) from None
    return node


def replace_at(t: Term, position: Position, replacement: Term) -> Term:
    """``t`` with the subterm at ``position`` replaced by ``replacement``.

    The replacement is inserted verbatim: it must already be expressed
    relative to the binders above ``position``.
    """
    spine = [t]
    for branch in position:
        try:
            spine.append(_child(spine[-1], branch))
        except KeyError:
            raise InvalidPositionError(
                f"Position {format_position(position)} is not valid for this term"
            ) from None
    rebuilt = replacement
    for branch, parent in zip(reversed(position), reversed(spine[:-1])):
        if branch is Branch.BODY:
            rebuilt = Lam(rebuilt, parent.hint)
        elif branch is Branch.FUN:
            rebuilt = App(rebuilt, parent.arg)
        else:
            rebuilt = App(parent.fun, rebuilt)
    return rebuilt


def is_redex_position(t: Term, position: Position) -> bool:
    if not is_valid_position(t, position):
        return False
    node = subterm_at(t, position)
    return isinstance(node, App) and isinstance(node.fun, Lam)


def binder_depth(t: Term, position: Position) -> int:
    """Number of abstractions strictly above ``position``."""
    subterm_at(t, position)
    return sum(1 for branch in position if branch is Branch.BODY)


def find_positions(t: Term, predicate: Callable[[Term, int], bool]) -> List[Position]:
    """Positions (in left-to-right order) of nodes satisfying ``predicate``.

    The predicate receives the node and its binder depth.
    """
    found: List[Position] = []
    stack = [(t, (), 0)]
    while stack:
        node, position, depth = stack.pop()
        if predicate(node, depth):
            found.append(position)
        if isinstance(node, Lam):
            stack.append((node.body, position + (Branch.BODY,), depth + 1))
        elif isinstance(node, App):
            stack.append((node.arg, position + (Branch.ARG,), depth))
            stack.append((node.fun, position + (Branch.FUN,), depth))
    return found


def variable_positions(t: Term, x: str) -> List[Position]:
    """Positions of the free occurrences of ``x``, left to right."""
    return find_positions(t, lambda node, _depth: isinstance(node, Var) and node.name == x)


def binder_occurrences(body: Term) -> List[Position]:
    """Positions inside ``body`` of the variable bound by its enclosing λ."""
    return find_positions(
        body, lambda node, depth: isinstance(node, Bound) and node.index == depth
    )
