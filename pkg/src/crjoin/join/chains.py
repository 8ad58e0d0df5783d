"""
Chain operations: arrow counting, reversal, appending and validation.
"""

import logging
from typing import Optional, Tuple

from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import (
    AppendMismatchError,
    IndexOutOfRangeError,
    InvalidPositionError,
    LinkInvalidError,
    ReplayError,
)
from ..reduction.models import Arrow, ReductionPath
from ..reduction.steps import contract, replay
from ..terms.core import alpha_eq, redexes
from ..terms.models import Position, Term, format_position
from .models import EqualityChain, JoinCertificate

logger = logging.getLogger(__name__)


def chain_arrow_counts(c: EqualityChain, i: int, j: int) -> Tuple[int, int]:
    """(♯l[i, j], ♯r[i, j]) over links i..j-1."""
    if not 0 <= i <= j <= c.length:
        raise IndexOutOfRangeError(f"Need 0 <= i <= j <= {c.length}, got i={i}, j={j}")
    segment = c.arrows[i:j]
    right = sum(1 for arrow in segment if arrow is Arrow.RIGHT)
    return len(segment) - right, right


def sub_chain(c: EqualityChain, i: int, j: int) -> EqualityChain:
    """The links between Mᵢ and Mⱼ."""
    if not 0 <= i <= j <= c.length:
        raise IndexOutOfRangeError(f"Need 0 <= i <= j <= {c.length}, got i={i}, j={j}")
    return EqualityChain(c.terms[i : j + 1], c.arrows[i:j], c.witnesses[i:j])


def chain_reverse(c: EqualityChain) -> EqualityChain:
    """Mₖ =β M₀: terms reversed, arrows flipped; witnesses stay on their link."""
    return EqualityChain(
        tuple(reversed(c.terms)),
        tuple(arrow.flipped for arrow in reversed(c.arrows)),
        tuple(reversed(c.witnesses)),
    )


def chain_append(c1: EqualityChain, c2: EqualityChain) -> EqualityChain:
    """Concatenate, dropping the duplicated pivot term."""
    if not alpha_eq(c1.target, c2.source):
        raise AppendMismatchError("Cannot append chains: the pivot terms differ")
    return EqualityChain(
        c1.terms + c2.terms[1:], c1.arrows + c2.arrows, c1.witnesses + c2.witnesses
    )


def chain_from_path(p: ReductionPath) -> EqualityChain:
    """A reduction path as a chain of Right links."""
    return EqualityChain(
        tuple(p.terms()),
        tuple(Arrow.RIGHT for _ in p.steps),
        tuple(step.redex for step in p.steps),
    )


def infer_witness(
    source: Term, target: Term, limits: ResourceLimits = DEFAULT_LIMITS
) -> Optional[Position]:
    """Least redex position of ``source`` whose contraction gives ``target``."""
    for position in redexes(source):
        step = contract(source, position, limits)
        if alpha_eq(step.target, target):
            logger.debug(f"inferred witness {format_position(position)}")
            return position
    return None


def validate_chain(
    c: EqualityChain,
    limits: ResourceLimits = DEFAULT_LIMITS,
    first_line: Optional[int] = None,
) -> None:
    """Re-contract every link; raise LinkInvalidError at the first bad one.

    With ``first_line`` the error reports the document line of the link's
    arrow, assuming one line per term and per arrow.
    """
    for i in range(c.length):
        step = c.link(i)
        line = None if first_line is None else first_line + 2 * i + 1
        try:
            redone = contract(step.source, step.redex, limits)
        except InvalidPositionError as exc:
            raise LinkInvalidError(f"link {i}: {exc}", line) from None
        if not alpha_eq(redone.target, step.target):
            raise LinkInvalidError(
                f"link {i}: contracting {format_position(step.redex)} does not give the next term",
                line,
            )


def verify_certificate(cert: JoinCertificate, limits: ResourceLimits = DEFAULT_LIMITS) -> None:
    """Replay both paths and compare their endpoints with the reduct."""
    replay(cert.left_path, limits)
    replay(cert.right_path, limits)
    if not alpha_eq(cert.left_path.target, cert.reduct):
        raise ReplayError(f"{cert.descriptor}: left path does not end at the reduct")
    if not alpha_eq(cert.right_path.target, cert.reduct):
        raise ReplayError(f"{cert.descriptor}: right path does not end at the reduct")
