"""
Bound value models: exact rationals with an absorbing overflow marker.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import total_ordering
from typing import Optional, Union

Number = Union[int, Fraction]


@total_ordering
class BoundValue:
    """Either an exact non-negative rational or Overflow.

    Overflow is absorbing under arithmetic and compares strictly greater
    than every exact value.
    """

    __slots__ = ("_exact",)

    def __init__(self, exact: Optional[Number] = None):
        object.__setattr__(self, "_exact", None if exact is None else Fraction(exact))

    def __setattr__(self, name, value):
        raise AttributeError("BoundValue is immutable")

    @classmethod
    def of(cls, value: Union[Number, "BoundValue"]) -> "BoundValue":
        if isinstance(value, BoundValue):
            return value
        return cls(value)

    @property
    def exact(self) -> Optional[Fraction]:
        return self._exact

    @property
    def is_overflow(self) -> bool:
        return self._exact is None

    def __add__(self, other) -> "BoundValue":
        other = BoundValue.of(other)
        if self.is_overflow or other.is_overflow:
            return OVERFLOW
        return BoundValue(self._exact + other._exact)

    __radd__ = __add__

    def __sub__(self, other) -> "BoundValue":
        other = BoundValue.of(other)
        if other.is_overflow:
            raise ValueError("cannot subtract an overflowed bound")
        if self.is_overflow:
            return OVERFLOW
        return BoundValue(self._exact - other._exact)

    def __mul__(self, other) -> "BoundValue":
        other = BoundValue.of(other)
        if self.is_overflow or other.is_overflow:
            return OVERFLOW
        return BoundValue(self._exact * other._exact)

    __rmul__ = __mul__

    def half(self) -> "BoundValue":
        return self * Fraction(1, 2)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = BoundValue(other)
        if not isinstance(other, BoundValue):
            return NotImplemented
        return self._exact == other._exact

    def __lt__(self, other) -> bool:
        other = BoundValue.of(other)
        if self.is_overflow:
            return False
        if other.is_overflow:
            return True
        return self._exact < other._exact

    def __hash__(self):
        return hash(("bound", self._exact))

    def dominates(self, actual: Number) -> bool:
        """True iff ``actual`` <= this bound."""
        return self.is_overflow or Fraction(actual) <= self._exact

    def render(self, bit_cap: Optional[int] = None) -> str:
        if self.is_overflow:
            return f"overflow(>2^{bit_cap})" if bit_cap else "overflow"
        if self._exact.denominator == 1:
            return str(self._exact.numerator)
        return f"{self._exact.numerator}/{self._exact.denominator}"

    def __str__(self):
        return self.render()

    def __repr__(self):
        return f"BoundValue({self.render()})"


OVERFLOW = BoundValue(None)
ZERO = BoundValue(0)


@dataclass(frozen=True)
class BoundTriple:
    """⟨left length, reduct, right length⟩ of a join bound."""

    left_len: BoundValue
    reduct_descriptor: str
    right_len: BoundValue

    def render(self, bit_cap: Optional[int] = None) -> str:
        return (
            f"<{self.left_len.render(bit_cap)}, {self.reduct_descriptor}, "
            f"{self.right_len.render(bit_cap)}>"
        )


@dataclass(frozen=True)
class BoundCheck:
    """An actual path length compared against a bound."""

    name: str
    actual: int
    bound: BoundValue
    passed: bool

    @classmethod
    def compare(cls, name: str, actual: int, bound: BoundValue) -> "BoundCheck":
        return cls(name=name, actual=actual, bound=bound, passed=bound.dominates(actual))
