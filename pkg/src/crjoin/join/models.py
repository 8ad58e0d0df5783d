"""
Equality-join models: β-equality chains and join certificates.
"""

from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from ..bounds.models import BoundCheck
from ..reduction.models import Arrow, ReductionPath, Step
from ..terms.models import Position, Term


@dataclass(frozen=True)
class EqualityChain:
    """M₀ =β^k Mₖ as terms, link directions and per-link redex witnesses.

    ``witnesses[i]`` is a redex position in the arrow-source of link i:
    Mᵢ for a Right link, Mᵢ₊₁ for a Left link.
    """

    terms: Tuple[Term, ...]
    arrows: Tuple[Arrow, ...] = ()
    witnesses: Tuple[Position, ...] = ()

    def __post_init__(self):
        if not self.terms:
            raise ValueError("A chain needs at least one term")
        if len(self.arrows) != len(self.terms) - 1:
            raise ValueError("A chain of k+1 terms needs exactly k arrows")
        if len(self.witnesses) != len(self.arrows):
            raise ValueError("Every link needs exactly one witness")

    @classmethod
    def single(cls, term: Term) -> "EqualityChain":
        return cls((term,))

    @property
    def length(self) -> int:
        return len(self.arrows)

    def __len__(self) -> int:
        return len(self.arrows)

    @property
    def source(self) -> Term:
        return self.terms[0]

    @property
    def target(self) -> Term:
        return self.terms[-1]

    @property
    def right_count(self) -> int:
        return sum(1 for arrow in self.arrows if arrow is Arrow.RIGHT)

    @property
    def left_count(self) -> int:
        return len(self.arrows) - self.right_count

    def link(self, i: int) -> Step:
        """Link i as a step in its arrow direction."""
        if self.arrows[i] is Arrow.RIGHT:
            return Step(self.terms[i], self.witnesses[i], self.terms[i + 1])
        return Step(self.terms[i + 1], self.witnesses[i], self.terms[i])

    def pattern(self) -> str:
        return "".join(arrow.symbol for arrow in self.arrows)


@dataclass(frozen=True)
class JoinCertificate:
    """A common reduct with witnessed paths from both chain ends.

    ``left_path`` starts at M₀ (or Pₙ for a peak), ``right_path`` at Mₖ
    (or Q_m); both end α-equal to ``reduct``.
    """

    reduct: Term
    left_path: ReductionPath
    right_path: ReductionPath
    descriptor: str
    bound_checks: Tuple[BoundCheck, ...] = field(default_factory=tuple)

    @property
    def lengths(self) -> Tuple[int, int]:
        return (self.left_path.length, self.right_path.length)

    @property
    def bounds_passed(self) -> bool:
        return all(check.passed for check in self.bound_checks)

    def failed_checks(self) -> List[BoundCheck]:
        return [check for check in self.bound_checks if not check.passed]


@dataclass(frozen=True)
class ChainJoins:
    """Common reducts for every crossed index, plus paths from every term.

    ``towards_left[i]`` is the reduct at M_{r−i}, ``towards_right[j]`` the
    reduct at M_{r+j}; ``term_paths[i]`` is Mᵢ ↠ M_r^{m_l*}.
    """

    right_count: int
    left_count: int
    crossed_iterations: int
    towards_left: Tuple[JoinCertificate, ...]
    towards_right: Tuple[JoinCertificate, ...]
    term_paths: Tuple[ReductionPath, ...]
    crossed_reduct: Optional[Term] = None

    def certificates(self) -> List[JoinCertificate]:
        return list(self.towards_left) + list(self.towards_right)
