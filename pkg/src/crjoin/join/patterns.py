"""
Symbolic classification of the 2^k arrow patterns of a length-k chain.
"""

import itertools
import logging
from dataclasses import dataclass
from typing import Dict, List, Tuple

from ..exceptions import InputError, PatternCapError
from ..reduction.models import Arrow

logger = logging.getLogger(__name__)

DEFAULT_PATTERN_CAP = 12


@dataclass(frozen=True)
class PatternRow:
    """Reduct descriptors of one arrow pattern."""

    arrows: Tuple[Arrow, ...]
    right: int
    left: int
    crossed_index: int
    crossed_iterations: int

    @property
    def pattern(self) -> str:
        return "".join(arrow.symbol for arrow in self.arrows)

    @property
    def source_reduct(self) -> str:
        return f"M_0^{{{self.right}*}}"

    @property
    def target_reduct(self) -> str:
        return f"M_{len(self.arrows)}^{{{self.left}*}}"

    @property
    def crossed_reduct(self) -> str:
        return f"M_{self.crossed_index}^{{{self.crossed_iterations}*}}"


@dataclass(frozen=True)
class PatternTable:
    """All patterns of length k, grouped by the number of Right arrows."""

    k: int
    classes: Dict[int, Tuple[PatternRow, ...]]

    def class_sizes(self) -> List[int]:
        return [len(self.classes[r]) for r in range(self.k + 1)]

    def rows(self) -> List[PatternRow]:
        return [row for r in range(self.k + 1) for row in self.classes[r]]


def classify(arrows: Tuple[Arrow, ...]) -> PatternRow:
    right = sum(1 for arrow in arrows if arrow is Arrow.RIGHT)
    crossed_iterations = sum(1 for arrow in arrows[:right] if arrow is Arrow.LEFT)
    return PatternRow(
        arrows=arrows,
        right=right,
        left=len(arrows) - right,
        crossed_index=right,
        crossed_iterations=crossed_iterations,
    )


def enumerate_patterns(k: int, cap: int = DEFAULT_PATTERN_CAP) -> PatternTable:
    """
    Classify every arrow pattern of length ``k``.

    Args:
        k: Chain length
        cap: Largest k accepted

    Returns:
        PatternTable: k+1 classes of sizes C(k, r)
    """
    if k < 0:
        raise InputError("k cannot be negative")
    if k > cap:
        raise PatternCapError(f"k={k} exceeds the pattern cap of {cap}")
    classes: Dict[int, List[PatternRow]] = {r: [] for r in range(k + 1)}
    for arrows in itertools.product((Arrow.RIGHT, Arrow.LEFT), repeat=k):
        row = classify(tuple(arrows))
        classes[row.right].append(row)
    logger.debug(f"classified {2 ** k} patterns of length {k}")
    return PatternTable(k=k, classes={r: tuple(rows) for r, rows in classes.items()})
