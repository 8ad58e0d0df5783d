"""
Exact bound arithmetic for crjoin.

Length and size measures of the confluence constructions, evaluated as
exact rationals with a bit-length cap beyond which values overflow.
"""

from .calculator import DEFAULT_BIT_CAP, BoundCalculator
from .models import OVERFLOW, ZERO, BoundCheck, BoundTriple, BoundValue

__all__ = [
    "DEFAULT_BIT_CAP",
    "BoundCalculator",
    "OVERFLOW",
    "ZERO",
    "BoundCheck",
    "BoundTriple",
    "BoundValue",
]
