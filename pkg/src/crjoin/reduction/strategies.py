"""
Reduction strategies used by the ``reduce`` command and the generators.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional

from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import InputError, ResourceCapError
from ..terms.core import redexes
from ..terms.models import Branch, Lam, Position, Term
from ..monitoring.metrics import metrics_collector
from .models import ReductionPath, Step
from .steps import contract, gross_knuth_path

logger = logging.getLogger(__name__)


class Strategy(Enum):
    """Redex selection strategies."""

    LEFTMOST = "leftmost"
    INNERMOST = "innermost"
    GROSS_KNUTH = "gross-knuth"
    RANDOM = "random"


def leftmost_outermost_redex(t: Term) -> Optional[Position]:
    """Lexicographically least redex position (normal order)."""
    node, position = t, ()
    while node.redex_count:
        if isinstance(node, Lam):
            node, position = node.body, position + (Branch.BODY,)
        elif isinstance(node.fun, Lam):
            return position
        elif node.fun.redex_count:
            node, position = node.fun, position + (Branch.FUN,)
        else:
            node, position = node.arg, position + (Branch.ARG,)
    return None


def leftmost_innermost_redex(t: Term) -> Optional[Position]:
    """Lexicographically least redex that contains no other redex."""
    if not t.redex_count:
        return None
    node, position = t, ()
    while True:
        if isinstance(node, Lam):
            node, position = node.body, position + (Branch.BODY,)
        elif node.fun.redex_count:
            node, position = node.fun, position + (Branch.FUN,)
        elif node.arg.redex_count:
            node, position = node.arg, position + (Branch.ARG,)
        else:
            return position


@dataclass(frozen=True)
class ReductionRun:
    """Outcome of running a strategy under fuel."""

    path: ReductionPath
    macro_steps: int
    normal_form: bool
    fuel_exhausted: bool


def run_strategy(
    t: Term,
    strategy: Strategy,
    fuel: int,
    limits: ResourceLimits = DEFAULT_LIMITS,
    rng: Optional[random.Random] = None,
) -> ReductionRun:
    """
    Reduce ``t`` with ``strategy`` for at most ``fuel`` (macro-)steps.

    Args:
        t: Start term
        strategy: Redex selection strategy
        fuel: Maximum number of steps; Gross-Knuth counts one development
            of all redexes as a single macro-step
        limits: Resource caps
        rng: Random source for the random strategy

    Returns:
        ReductionRun: The path and how it stopped
    """
    if fuel < 0:
        raise InputError("fuel cannot be negative")
    if strategy is Strategy.RANDOM and rng is None:
        rng = random.Random(0)

    steps: List[Step] = []
    current = t
    macro_steps = 0
    while macro_steps < fuel and current.redex_count:
        if strategy is Strategy.GROSS_KNUTH:
            steps.extend(gross_knuth_path(current, limits).steps)
        else:
            if strategy is Strategy.LEFTMOST:
                position = leftmost_outermost_redex(current)
            elif strategy is Strategy.INNERMOST:
                position = leftmost_innermost_redex(current)
            else:
                position = rng.choice(redexes(current).ordered())
            steps.append(contract(current, position, limits))
        if steps:
            current = steps[-1].target
        macro_steps += 1
        limits.check_path_length(len(steps))

    path = ReductionPath(t, tuple(steps))
    metrics_collector.record_steps(strategy.value, path.length)
    normal = current.redex_count == 0
    if not normal:
        logger.debug(f"{strategy.value} reduction stopped after {macro_steps} steps")
    return ReductionRun(
        path=path,
        macro_steps=macro_steps,
        normal_form=normal,
        fuel_exhausted=not normal and macro_steps >= fuel,
    )


def normalize(
    t: Term,
    strategy: Strategy = Strategy.INNERMOST,
    limits: ResourceLimits = DEFAULT_LIMITS,
) -> ReductionPath:
    """Reduce to normal form, bounded only by the path-length cap."""
    run = run_strategy(t, strategy, limits.path_length_cap, limits)
    if not run.normal_form:
        raise ResourceCapError(
            f"no normal form within {limits.path_length_cap} {strategy.value} steps"
        )
    return run.path

