"""
β-reduction for crjoin.

Witnessed steps and paths, the Takahashi translation, residuals,
developments, strategies, and the constructive path builders behind
the confluence joins.
"""

from .lifting import (
    PathLifter,
    cofinal_path,
    cofinal_step,
    complete_development,
    mono_lift,
    mono_lift_path,
    star_subst_path,
    substitution_path,
)
from .models import Arrow, MarkedTerm, ReductionPath, Step
from .steps import (
    contract,
    count_new_redex_contractions,
    develop,
    development_segments,
    gross_knuth_path,
    minimal_complete_development,
    new_redexes,
    replay,
    residual_positions,
    residuals,
    star_iter,
    star_iter_path,
    takahashi_star,
)
from .strategies import (
    ReductionRun,
    Strategy,
    leftmost_innermost_redex,
    leftmost_outermost_redex,
    normalize,
    run_strategy,
)

__all__ = [
    "Arrow",
    "MarkedTerm",
    "ReductionPath",
    "Step",
    "PathLifter",
    "cofinal_path",
    "cofinal_step",
    "complete_development",
    "mono_lift",
    "mono_lift_path",
    "star_subst_path",
    "substitution_path",
    "contract",
    "count_new_redex_contractions",
    "develop",
    "development_segments",
    "gross_knuth_path",
    "minimal_complete_development",
    "new_redexes",
    "replay",
    "residual_positions",
    "residuals",
    "star_iter",
    "star_iter_path",
    "takahashi_star",
    "ReductionRun",
    "Strategy",
    "leftmost_innermost_redex",
    "leftmost_outermost_redex",
    "normalize",
    "run_strategy",
]
