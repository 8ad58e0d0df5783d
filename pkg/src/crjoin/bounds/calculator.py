"""
Bound calculator for confluence measures.

All measures are evaluated in exact rational arithmetic. Any intermediate
value whose numerator or denominator needs more than ``bit_cap`` bits
becomes Overflow, which then absorbs the rest of the computation.
"""

import logging
import math
from fractions import Fraction
from typing import TYPE_CHECKING, Callable, Dict, List, Sequence, Union

from ..exceptions import InputError, OrderViolationError, UnknownFunctionError
from ..reduction.models import Arrow
from .models import OVERFLOW, ZERO, BoundTriple, BoundValue, Number

if TYPE_CHECKING:
    from ..join.models import EqualityChain

logger = logging.getLogger(__name__)

DEFAULT_BIT_CAP = 1_048_576

Operand = Union[Number, BoundValue]


def _natural(value: int, name: str, minimum: int = 0) -> int:
    if not isinstance(value, int) or value < minimum:
        raise InputError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return value


class BoundCalculator:
    """Evaluates the length and size measures of the confluence proofs."""

    def __init__(self, bit_cap: int = DEFAULT_BIT_CAP):
        """
        Initialize the calculator.

        Args:
            bit_cap: Maximum bit length of an exact value before it overflows
        """
        if bit_cap < 1:
            raise ValueError("bit_cap must be positive")
        self.bit_cap = bit_cap

    # Arithmetic helpers

    def capped(self, value: Operand) -> BoundValue:
        value = BoundValue.of(value)
        if value.is_overflow:
            return value
        exact = value.exact
        if (
            abs(exact.numerator).bit_length() > self.bit_cap
            or exact.denominator.bit_length() > self.bit_cap
        ):
            return OVERFLOW
        return value

    @staticmethod
    def _ceil_exponent(exponent: BoundValue) -> int:
        # Fractional exponents only occur under bases >= 1, so rounding up
        # keeps every result an upper bound.
        return math.ceil(exponent.exact)

    def pow2(self, exponent: Operand) -> BoundValue:
        """2^exponent."""
        return self.power(2, exponent)

    def power(self, base: Operand, exponent: Operand) -> BoundValue:
        """base^exponent with Overflow once the result exceeds the bit cap."""
        base, exponent = BoundValue.of(base), BoundValue.of(exponent)
        if exponent == 0:
            return BoundValue(1)
        if base.is_overflow:
            return OVERFLOW
        if base.exact in (0, 1):
            return base
        if exponent.is_overflow:
            return OVERFLOW
        e = self._ceil_exponent(exponent)
        width = max(abs(base.exact.numerator).bit_length(), base.exact.denominator.bit_length())
        # (bit length - 1) * |e| is a lower estimate of the result's width
        if (width - 1) * abs(e) > self.bit_cap:
            return OVERFLOW
        return self.capped(base.exact ** e)

    # Measure functions

    def iter_exp(self, m: int, n: int) -> BoundValue:
        """𝟐ₙ^m: 𝟐₀^m = m, 𝟐_{n+1}^m = 2^{𝟐ₙ^m}."""
        _natural(m, "m")
        _natural(n, "n")
        value = self.capped(m)
        for _ in range(n):
            if value.is_overflow:
                break
            value = self.pow2(value)
        return value

    def tower(self, base: BoundValue, n: int) -> BoundValue:
        """𝟐ₙ^x for an already evaluated x."""
        value = base
        for _ in range(n):
            if value.is_overflow:
                break
            value = self.pow2(value)
        return value

    def f_iter(self, m: int, n: int) -> BoundValue:
        """F(m, 0) = m, F(m, n+1) = 2^{F(m, n) - 1}."""
        _natural(m, "m")
        _natural(n, "n")
        value = self.capped(m)
        for _ in range(n):
            if value.is_overflow:
                break
            value = self.pow2(value - 1)
        return value

    def len_bound(self, size: int, n: int) -> BoundValue:
        """Len(|M|, n): a bound on the length of M ↠ M^{n*}.

        0 for n = 0, otherwise ½·Σ_{k<n} F(|M|, k) − n, floored at 0.
        """
        _natural(size, "size")
        _natural(n, "n")
        if n == 0:
            return ZERO
        total = ZERO
        for k in range(n):
            total = total + self.f_iter(size, k)
            if total.is_overflow:
                return OVERFLOW
        value = total.half() - n
        return value if value >= 0 else ZERO

    def size_after_steps(self, size: int, n: int) -> BoundValue:
        """8·(|M|/8)^{2^n}, the size bound after n reduction steps."""
        _natural(size, "size")
        _natural(n, "n")
        exponent = self.pow2(n)
        return self.capped(self.power(Fraction(size, 8), exponent) * 8)

    def star_size_bound(self, size: int) -> BoundValue:
        """|M*| <= 2^{|M|-1}."""
        _natural(size, "size", minimum=1)
        return self.pow2(size - 1)

    def mon_bound(self, size: int, m: int, n: int) -> BoundValue:
        """Mon(|M|, m, n): length bound of M^{n*} ↠ N^{n*} for M ↠^m N."""
        _natural(size, "size")
        _natural(m, "m")
        _natural(n, "n", minimum=1)
        value = self.pow2(self.power(size, self.pow2(m)))
        for level in range(2, n + 1):
            factor = self.iter_exp(size, level - 2)
            value = self.pow2(self.pow2(self.capped(self.pow2(value) * factor)))
        return value

    def rev_bound(self, size: int, n: int) -> BoundValue:
        """Rev(|M|, n): length bound of N ↠ M^{n*} for M ↠^n N."""
        _natural(size, "size")
        _natural(n, "n", minimum=1)
        value = self.capped(BoundValue(Fraction(size * size, 2)))
        for level in range(2, n + 1):
            head = self.power(size, self.pow2(level)).half()
            tail = self.pow2(self.power(size, self.pow2(value + (level - 1))))
            value = self.capped(head + tail)
        return value

    def term_size_chain(self, chain: "EqualityChain") -> BoundValue:
        """TermSize of a chain, read as a concatenation of maximal runs.

        A run of r arrows whose arrow-source is S contributes
        8·(|S|/8)^{2^r}; the result is also at least every term size.
        """
        sizes = [term.size for term in chain.terms]
        result = BoundValue(max(sizes))
        arrows = list(chain.arrows)
        start = 0
        while start < len(arrows):
            end = start
            while end < len(arrows) and arrows[end] is arrows[start]:
                end += 1
            source = sizes[start] if arrows[start] is Arrow.RIGHT else sizes[end]
            result = max(result, self.size_after_steps(source, end - start))
            start = end
        return result

    def cr_red_bound(self, l: int, size: int, r: int) -> BoundTriple:
        """CR-red(l, |M|, r) = ⟨m, N₁^{r*}, n⟩ for a peak N₁ ↞^l M ↠^r N₂."""
        _natural(l, "l")
        _natural(size, "size")
        _natural(r, "r", minimum=1)
        lifted_size = self.power(size, self.pow2(l))
        left = lifted_size.half()
        right = self.capped(self.power(size, 2).half() + self.pow2(lifted_size))
        for level in range(2, r + 1):
            left = self.tower(lifted_size, level - 1)
            head = self.power(size, self.pow2(level)).half()
            tail = self.pow2(self.power(size, self.pow2(right + (level - 1))))
            right = self.capped(head + tail)
        return BoundTriple(left, f"N_1^{{{r}*}}", right)

    def v_size_bound(self, l: int, size: int, r: int) -> BoundTriple:
        """V-size(l, |M|, r) = ⟨Rev(|M|, l) + 𝟐_{r-1}^{|M|}, M^{r*}, Rev(|M|, r)⟩."""
        _natural(l, "l")
        _natural(size, "size")
        _natural(r, "r")
        if l > r:
            raise OrderViolationError(f"V-size needs l <= r, got l={l}, r={r}")
        if l < 1:
            raise InputError("V-size needs l >= 1")
        left = self.capped(self.rev_bound(size, l) + self.iter_exp(size, r - 1))
        return BoundTriple(left, f"M^{{{r}*}}", self.rev_bound(size, r))

    def cr_eq_bound(
        self, arrows: Sequence[Arrow], size0: int, term_size: Operand
    ) -> BoundTriple:
        """
        CR-eq of a chain, folded over its arrow directions only.

        Args:
            arrows: Link directions of M₀ =β^k Mₖ
            size0: |M₀|
            term_size: The TermSize constant 𝖬 of the chain

        Returns:
            BoundTriple: ⟨a, M₀^{r*}, b⟩ bounding M₀ ↠ M₀^{r*} ↞ Mₖ
        """
        _natural(size0, "size0")
        term_size = BoundValue.of(term_size)
        arrows = list(arrows)
        if not arrows:
            return BoundTriple(ZERO, "M_0^{0*}", ZERO)

        if arrows[0] is Arrow.LEFT:
            a, r, b = ZERO, 0, BoundValue(1)
        else:
            a = BoundValue(Fraction(size0, 2))
            r = 1
            b = self.capped(BoundValue(Fraction(size0 * size0, 2)))
        for arrow in arrows[1:]:
            if arrow is Arrow.LEFT:
                b = b + 1
                continue
            a = self.capped(a + self.iter_exp(size0, r).half())
            b = self.capped(term_size.half() + self.pow2(self.power(term_size, self.pow2(b))))
            r += 1
        return BoundTriple(a, f"M_0^{{{r}*}}", b)

    def bl_bound(self, l: int, size: int, r: int) -> BoundValue:
        """The diagram-size bound bl(l, |M|, r) used for comparison tables."""
        _natural(l, "l")
        _natural(size, "size")
        _natural(r, "r", minimum=1)
        value = self.power(size, self.pow2(self.pow2(l) + (l + 2)))
        for level in range(2, r + 1):
            value = self.power(size, self.pow2(self.pow2(value) + value + (level + 1)))
        return value

    # Dispatch for the command line

    def functions(self) -> Dict[str, Callable[..., Union[BoundValue, BoundTriple]]]:
        return {
            "iter-exp": self.iter_exp,
            "f": self.f_iter,
            "len": self.len_bound,
            "size-after": self.size_after_steps,
            "star-size": self.star_size_bound,
            "mon": self.mon_bound,
            "rev": self.rev_bound,
            "cr-red": self.cr_red_bound,
            "v-size": self.v_size_bound,
            "bl": self.bl_bound,
            "cr-eq": self._cr_eq_from_args,
        }

    def _cr_eq_from_args(self, arrows: str, size0: int, term_size: int) -> BoundTriple:
        parsed = [Arrow.parse(token) for token in arrows.replace(",", " ").split()]
        return self.cr_eq_bound(parsed, size0, term_size)

    def evaluate(self, name: str, args: Sequence[str]) -> Union[BoundValue, BoundTriple]:
        """Evaluate a measure by its command-line name."""
        functions = self.functions()
        if name not in functions:
            raise UnknownFunctionError(
                f"Unknown bound function {name!r}; expected one of {', '.join(sorted(functions))}"
            )
        if name == "cr-eq":
            if len(args) != 3:
                raise InputError("cr-eq expects ARROWS SIZE0 TERMSIZE")
            arrows, rest = args[0], args[1:]
        else:
            arrows, rest = None, args
        try:
            numbers = [int(arg) for arg in rest]
        except ValueError:
            raise InputError(f"Arguments of {name} must be naturals: {' '.join(rest)}") from None
        logger.debug(f"evaluating {name} {' '.join(args)} under a {self.bit_cap}-bit cap")
        try:
            if arrows is not None:
                return self._cr_eq_from_args(arrows, *numbers)
            return functions[name](*numbers)
        except TypeError as exc:
            raise InputError(f"Wrong number of arguments for {name}: {exc}") from None
        except ValueError as exc:
            if isinstance(exc, InputError):
                raise
            raise InputError(str(exc)) from None

    def grid(
        self, name: str, ranges: Sequence[Sequence[int]]
    ) -> List[List[Union[int, BoundValue, BoundTriple]]]:
        """Evaluate ``name`` over the cartesian product of argument ranges."""
        rows: List[List[Union[int, BoundValue, BoundTriple]]] = [[]]
        for values in ranges:
            rows = [row + [value] for row in rows for value in values]
        result = []
        for row in rows:
            result.append(row + [self.evaluate(name, [str(v) for v in row])])
        return result

    def compare_cr_red_with_bl(
        self, size: int, max_l: int, max_r: int
    ) -> List[List[Union[int, str]]]:
        """Side-by-side CR-red and bl for every 0 <= l <= max_l, 1 <= r <= max_r."""
        rows: List[List[Union[int, str]]] = []
        for l in range(max_l + 1):
            for r in range(1, max_r + 1):
                triple = self.cr_red_bound(l, size, r)
                bl = self.bl_bound(l, size, r)
                rows.append(
                    [
                        l,
                        r,
                        triple.left_len.render(self.bit_cap),
                        triple.right_len.render(self.bit_cap),
                        bl.render(self.bit_cap),
                    ]
                )
        return rows
