"""
Term core for crjoin.

This package contains the nameless λ-term representation together with
size, substitution, redex enumeration and position utilities.
"""

from .models import (
    App,
    Bound,
    Branch,
    EMPTY_REDEXES,
    Lam,
    Position,
    ROOT,
    RedexSet,
    Term,
    Var,
    format_position,
    parse_position,
    position_letters,
)
from .core import (
    SubtermRelation,
    alpha_eq,
    free_names,
    free_occurrences,
    redexes,
    replace_at,
    size,
    substitute,
    subterm_at,
    subterm_relation,
)

__all__ = [
    "App",
    "Bound",
    "Branch",
    "EMPTY_REDEXES",
    "Lam",
    "Position",
    "ROOT",
    "RedexSet",
    "Term",
    "Var",
    "format_position",
    "parse_position",
    "position_letters",
    "SubtermRelation",
    "alpha_eq",
    "free_names",
    "free_occurrences",
    "redexes",
    "replace_at",
    "size",
    "substitute",
    "subterm_at",
    "subterm_relation",
]
