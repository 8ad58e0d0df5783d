"""
Reduction models: witnessed β-steps, reduction paths and marked terms.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, List, Tuple

from ..exceptions import InvalidPositionError, ReplayError
from ..terms.core import is_redex_position
from ..terms.models import Position, RedexSet, Term, format_position


class Arrow(Enum):
    """Orientation of a link between consecutive chain terms."""

    RIGHT = "->"
    LEFT = "<-"

    @property
    def symbol(self) -> str:
        return self.value

    @property
    def flipped(self) -> "Arrow":
        return Arrow.LEFT if self is Arrow.RIGHT else Arrow.RIGHT

    @classmethod
    def parse(cls, token: str) -> "Arrow":
        for arrow in cls:
            if arrow.value == token:
                return arrow
        raise ValueError(f"Unknown arrow {token!r}")


@dataclass(frozen=True)
class Step:
    """One β-step ``source → target`` contracting the redex at ``redex``."""

    source: Term
    redex: Position
    target: Term

    def describe(self) -> str:
        return f"-[{format_position(self.redex)}]->"


@dataclass(frozen=True)
class ReductionPath:
    """A witnessed reduction sequence starting at ``source``.

    Builders keep the path chained: every step's source is α-equal to the
    previous step's target. ``replay`` re-executes it from scratch.
    """

    source: Term
    steps: Tuple[Step, ...] = field(default_factory=tuple)

    @classmethod
    def empty(cls, term: Term) -> "ReductionPath":
        return cls(term, ())

    @classmethod
    def of(cls, source: Term, steps: Iterable[Step]) -> "ReductionPath":
        return cls(source, tuple(steps))

    @property
    def target(self) -> Term:
        return self.steps[-1].target if self.steps else self.source

    @property
    def length(self) -> int:
        return len(self.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def terms(self) -> List[Term]:
        """[M₀, M₁, …, Mₙ]."""
        return [self.source] + [step.target for step in self.steps]

    def then(self, other: "ReductionPath") -> "ReductionPath":
        """Concatenate; ``other`` must start where this path ends, up to α."""
        if self.target is not other.source and self.target != other.source:
            raise ReplayError("Cannot concatenate paths: endpoints differ")
        if not other.steps:
            return self
        return ReductionPath(self.source, self.steps + other.steps)

    def extend(self, step: Step) -> "ReductionPath":
        return self.then(ReductionPath(step.source, (step,)))

    def prepend(self, step: Step) -> "ReductionPath":
        return ReductionPath(step.source, (step,)).then(self)


@dataclass(frozen=True)
class MarkedTerm:
    """A term with a marked subset of its redexes."""

    term: Term
    marks: RedexSet

    def __post_init__(self):
        for position in self.marks.positions:
            if not is_redex_position(self.term, position):
                raise InvalidPositionError(
                    f"Mark {format_position(position)} is not a redex of the term"
                )
