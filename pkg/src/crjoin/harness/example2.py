"""
The Church-numeral tower example.

With Nₙ = 𝐜₂ 𝐜₂ … 𝐜₂ (n copies, so Nₙ ↠ 𝐜 of 𝟐ₙ¹), the terms
M₁ = 𝐜₁ p (Nₙ p q) and M₂ = Nₙ p (𝐜₁ p q) are small but only meet at
p^(𝟐ₙ¹+1)(q). Both sides are normalized innermost-first, which keeps every
contraction near the root of the growing application spine.
"""

import logging
from typing import Optional, Tuple

from pydantic import BaseModel

from ..bounds.calculator import DEFAULT_BIT_CAP, BoundCalculator
from ..bounds.models import BoundValue
from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import InputError, ResourceCapError
from ..join.chains import chain_append, chain_from_path, chain_reverse
from ..join.joiner import ChainJoiner, JoinConfig
from ..join.models import EqualityChain, JoinCertificate
from ..reduction.strategies import Strategy, normalize
from ..runtime import run_with_deep_stack
from ..terms.core import alpha_eq
from ..terms.models import App, Bound, Lam, Term, Var

logger = logging.getLogger(__name__)


def church(n: int) -> Term:
    """𝐜ₙ = λf x. fⁿ(x)."""
    body: Term = Bound(0)
    for _ in range(n):
        body = App(Bound(1), body)
    return Lam(Lam(body, "x"), "f")


def iterate_application(f: Term, n: int, x: Term) -> Term:
    """fⁿ(x) for closed ``f``."""
    result = x
    for _ in range(n):
        result = App(f, result)
    return result


def tower_numeral(n: int) -> Term:
    """N₁ = 𝐜₂, Nₖ₊₁ = Nₖ 𝐜₂."""
    if n < 1:
        raise InputError("the tower needs n >= 1")
    two = church(2)
    result = two
    for _ in range(n - 1):
        result = App(result, two)
    return result


def example_terms(n: int) -> Tuple[Term, Term]:
    """(M₁, M₂) for the tower of height ``n``."""
    p, q = Var("p"), Var("q")
    one = church(1)
    tower = tower_numeral(n)
    m1 = App(App(one, p), App(App(tower, p), q))
    m2 = App(App(tower, p), App(App(one, p), q))
    return m1, m2


class Example2Report(BaseModel):
    """Measurements of one tower example."""

    n: int
    size_m1: int
    size_m2: int
    stated_size: int
    left_steps: int
    right_steps: int
    chain_length: int
    chain_length_bound: str
    reduct_size: int
    expected_reduct_size: int
    reduct_matches: bool
    join_lengths: Tuple[int, int]
    bounds_passed: bool

    @property
    def passed(self) -> bool:
        return (
            self.reduct_matches
            and self.size_m1 == self.size_m2
            and self.chain_length_fits
            and self.bounds_passed
        )

    @property
    def chain_length_fits(self) -> bool:
        return self.chain_length_bound.startswith("overflow") or self.chain_length <= int(
            self.chain_length_bound
        )


def build_chain(n: int, limits: ResourceLimits = DEFAULT_LIMITS) -> EqualityChain:
    """M₁ ↠ p^(𝟐ₙ¹+1)(q) ↞ M₂ as a valley chain."""
    m1, m2 = example_terms(n)
    left = normalize(m1, Strategy.INNERMOST, limits)
    right = normalize(m2, Strategy.INNERMOST, limits)
    logger.info(f"example n={n}: {left.length} + {right.length} steps to the common normal form")
    return chain_append(chain_from_path(left), chain_reverse(chain_from_path(right)))


def run_example2(
    n: int,
    limits: ResourceLimits = DEFAULT_LIMITS,
    bit_cap: Optional[int] = None,
) -> Tuple[Example2Report, JoinCertificate]:
    """
    Build, join and measure the tower example of height ``n``.

    Args:
        n: Tower height (n >= 1)
        limits: Resource caps; heights above 4 exceed any practical cap
        bit_cap: Bit cap of the bound arithmetic

    Returns:
        The report and the refined join certificate of the chain
    """
    if n < 1:
        raise InputError("example2 needs n >= 1")
    config = JoinConfig(limits=limits, bit_cap=bit_cap or DEFAULT_BIT_CAP)
    calculator = BoundCalculator(config.bit_cap)
    height = calculator.iter_exp(1, n)
    if height.is_overflow:
        raise ResourceCapError(f"the tower of height {n} overflows the bit cap")
    limits.check_term_size(2 * int(height.exact) + 3)
    return run_with_deep_stack(_run_example2, n, int(height.exact), config, calculator)


def _run_example2(
    n: int, height: int, config: JoinConfig, calculator: BoundCalculator
) -> Tuple[Example2Report, JoinCertificate]:
    m1, m2 = example_terms(n)
    chain = build_chain(n, config.limits)
    cert = ChainJoiner(config).join_refined(chain)

    chain_bound = calculator.capped((BoundValue(height) + 4) * 2)
    # Independent construction of the common reduct
    expected = iterate_application(Var("p"), height + 1, Var("q"))

    report = Example2Report(
        n=n,
        size_m1=m1.size,
        size_m2=m2.size,
        stated_size=8 * n + 1,
        left_steps=chain.right_count,
        right_steps=chain.left_count,
        chain_length=chain.length,
        chain_length_bound=chain_bound.render(config.bit_cap),
        reduct_size=cert.reduct.size,
        expected_reduct_size=expected.size,
        reduct_matches=alpha_eq(cert.reduct, expected),
        join_lengths=cert.lengths,
        bounds_passed=cert.bounds_passed,
    )
    return report, cert
