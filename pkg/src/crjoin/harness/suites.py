"""
Seeded property suites over random terms, paths, chains and peaks.

Each case draws from its own ``random.Random`` seeded by
``"{seed}:{suite}:{index}"``, so a failure is reproduced from the label in
the report alone. A case that trips a resource cap is skipped; any other
exception fails it.
"""

import logging
import random
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence

from pydantic import BaseModel, Field

from ..bounds.calculator import DEFAULT_BIT_CAP, BoundCalculator
from ..bounds.models import BoundValue
from ..config import HarnessSettings, ResourceLimits, Settings, get_settings
from ..exceptions import InputError, PropertyViolation, ResourceCapError
from ..join.joiner import ChainJoiner, JoinConfig
from ..join.models import JoinCertificate
from ..monitoring.metrics import metrics_collector
from ..reduction.lifting import PathLifter
from ..reduction.models import Arrow, ReductionPath
from ..reduction.steps import gross_knuth_path, replay, star_iter, star_iter_path, takahashi_star
from ..runtime import run_with_deep_stack
from ..terms.core import alpha_eq, free_occurrences, redexes, substitute
from ..terms.models import Var
from .generators import TermGenerator, TermWeights, random_chain, random_path, random_peak, random_step

logger = logging.getLogger(__name__)


class HarnessConfig(HarnessSettings):
    """Parameters of one harness run: the harness settings plus the bit cap of bound arithmetic."""

    bit_cap: int = Field(default=DEFAULT_BIT_CAP, gt=0)

    @classmethod
    def from_settings(cls, settings: Optional[Settings] = None, **overrides) -> "HarnessConfig":
        """Harness settings, with ``None`` overrides ignored."""
        settings = settings or get_settings()
        values = settings.harness.model_dump()
        values["bit_cap"] = settings.limits.bit_cap
        values.update({key: value for key, value in overrides.items() if value is not None})
        return cls(**values)

    @property
    def limits(self) -> ResourceLimits:
        return ResourceLimits(
            term_size_cap=self.term_size_cap, path_length_cap=self.path_length_cap
        )

    @property
    def weights(self) -> TermWeights:
        return TermWeights(
            abstraction=self.abstraction_weight,
            application=self.application_weight,
            variable=self.variable_weight,
        )


class CaseOutcome(str, Enum):
    PASS = "pass"
    FAIL = "fail"
    SKIP = "skip"


class CaseResult(BaseModel):
    """Outcome of one generated case."""

    suite: str
    index: int
    seed: str = Field(..., description="Reproduction label of the case RNG")
    outcome: CaseOutcome
    message: Optional[str] = None


MAX_SKIPPED_FRACTION = 0.5


class SuiteReport(BaseModel):
    """Aggregated outcomes of one suite, failures in case-index order."""

    suite: str
    passed: int = 0
    failed: int = 0
    skipped: int = 0
    failures: List[CaseResult] = Field(default_factory=list)

    @property
    def total(self) -> int:
        return self.passed + self.failed + self.skipped

    @property
    def skipped_fraction(self) -> float:
        return self.skipped / self.total if self.total else 0.0

    @property
    def too_many_skips(self) -> bool:
        """At least half the cases hit a resource cap."""
        return self.skipped_fraction >= MAX_SKIPPED_FRACTION

    @property
    def ok(self) -> bool:
        return self.failed == 0 and not self.too_many_skips


class HarnessReport(BaseModel):
    """Everything one ``check`` invocation found."""

    seed: int
    cases: int
    suites: List[SuiteReport] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(report.ok for report in self.suites)

    @property
    def failed(self) -> int:
        return sum(report.failed for report in self.suites)

    @property
    def over_skip_limit(self) -> List[str]:
        return [report.suite for report in self.suites if report.too_many_skips]


@dataclass
class CaseContext:
    """Per-case randomness and the shared machinery of a run."""

    config: HarnessConfig
    rng: random.Random
    generator: TermGenerator
    limits: ResourceLimits
    calculator: BoundCalculator
    joiner: ChainJoiner
    lifter: PathLifter

    def term(self):
        return self.generator.term(self.config.max_term_size)

    def term_with_redex(self):
        return self.generator.term_with_redex(self.config.max_term_size)

    def path(self, t, max_length: int) -> ReductionPath:
        length = self.rng.randint(1, min(max_length, self.config.step_fuel))
        return random_path(self.rng, t, length, self.limits)

    def name(self) -> str:
        return self.rng.choice(self.config.free_variables)


def require(condition: bool, message: str) -> None:
    if not condition:
        raise PropertyViolation(message)


def _require_bounds(cert: JoinCertificate) -> None:
    failed = ", ".join(check.name for check in cert.failed_checks())
    require(cert.bounds_passed, f"{cert.descriptor}: bound checks failed: {failed}")


# Suites


def check_lemma1(ctx: CaseContext) -> None:
    """|M[x:=N]| = |M| + ♯(x∈M)·(|N| − 1), and M[x:=x] = M."""
    m, n, x = ctx.term(), ctx.term(), ctx.name()
    result = substitute(m, x, n)
    expected = m.size + free_occurrences(m, x) * (n.size - 1)
    require(result.size == expected, f"|M[x:=N]| = {result.size}, expected {expected}")
    require(alpha_eq(substitute(m, x, Var(x)), m), "M[x:=x] differs from M")


def check_redexcount(ctx: CaseContext) -> None:
    """♯Redex(M) <= |M|/2 − 1, and 0 below size 4."""
    t = ctx.term()
    count = len(redexes(t))
    require(count == t.redex_count, "cached redex count disagrees with enumeration")
    if t.size < 4:
        require(count == 0, f"term of size {t.size} has {count} redexes")
    else:
        require(count <= t.size // 2 - 1, f"{count} redexes in a term of size {t.size}")


def check_sizes(ctx: CaseContext) -> None:
    """|N|·8^(2^n − 1) < |M|^(2^n) for M ↠ⁿ N with n >= 1."""
    t = ctx.term_with_redex()
    path = ctx.path(t, 6)
    for n, term in enumerate(path.terms()[1:], start=1):
        require(
            term.size * 8 ** (2 ** n - 1) < t.size ** (2 ** n),
            f"|N| = {term.size} after {n} steps from a term of size {t.size}",
        )
        require(
            BoundValue(term.size) < ctx.calculator.size_after_steps(t.size, n),
            "size_after_steps is not a strict bound",
        )


def check_star(ctx: CaseContext) -> None:
    """Takahashi translation against its size bound and the Gross-Knuth path."""
    t = ctx.term()
    star = takahashi_star(t, ctx.limits)
    require(
        ctx.calculator.star_size_bound(t.size).dominates(star.size),
        f"|M*| = {star.size} exceeds 2^{t.size - 1}",
    )
    development = gross_knuth_path(t, ctx.limits)
    replay(development, ctx.limits)
    require(alpha_eq(development.target, star), "Gross-Knuth path misses M*")
    require(development.length <= t.redex_count, "Gross-Knuth path longer than ♯Redex(M)")
    require(development.length <= max(0, t.size // 2 - 1), "Gross-Knuth path beyond |M|/2 − 1")

    n = ctx.rng.randint(1, 2)
    iterated = star_iter_path(t, n, ctx.limits)
    replay(iterated, ctx.limits)
    require(alpha_eq(iterated.target, star_iter(t, n, ctx.limits)), f"path misses M^{{{n}*}}")
    require(
        ctx.calculator.len_bound(t.size, n).dominates(iterated.length),
        f"M ↠ M^{{{n}*}} of length {iterated.length} exceeds Len",
    )


def check_cofinal(ctx: CaseContext) -> None:
    """N ↠ M* for M → N, and N ↠ M^{n*} for M ↠ⁿ N within Rev."""
    t = ctx.term_with_redex()
    step = random_step(ctx.rng, t, ctx.limits)
    path = ctx.lifter.cofinal_step(step)
    replay(path, ctx.limits)
    require(alpha_eq(path.source, step.target), "cofinal path does not start at N")
    require(alpha_eq(path.target, takahashi_star(t, ctx.limits)), "cofinal path misses M*")
    limit = max(0, step.target.size // 2 - 1)
    require(path.length <= limit, f"cofinal path of length {path.length} exceeds {limit}")

    forward = ctx.path(t, 3)
    back = ctx.lifter.cofinal_path(forward)
    replay(back, ctx.limits)
    require(alpha_eq(back.source, forward.target), "extended cofinal path does not start at N")
    require(
        alpha_eq(back.target, star_iter(t, forward.length, ctx.limits)),
        f"extended cofinal path misses M^{{{forward.length}*}}",
    )
    bound = ctx.calculator.rev_bound(t.size, forward.length)
    require(BoundValue(back.length) < bound, f"length {back.length} not below Rev = {bound}")


def check_mono(ctx: CaseContext) -> None:
    """Monotonicity lifts and the exact substitution-path length."""
    t = ctx.term_with_redex()
    step = random_step(ctx.rng, t, ctx.limits)
    lifted = ctx.lifter.mono_lift(step)
    replay(lifted, ctx.limits)
    source_star = ctx.lifter.star(t)
    require(alpha_eq(lifted.source, source_star), "lift does not start at M*")
    require(alpha_eq(lifted.target, ctx.lifter.star(step.target)), "lift misses N*")
    require(
        lifted.length <= source_star.size - 1,
        f"lift of length {lifted.length} exceeds |M*| − 1 = {source_star.size - 1}",
    )

    path = ctx.path(t, 3)
    n = ctx.rng.randint(1, 2)
    lifted_path = ctx.lifter.mono_lift_path(path, n)
    replay(lifted_path, ctx.limits)
    require(
        alpha_eq(lifted_path.target, ctx.lifter.star_iter(path.target, n)),
        f"lifted path misses N^{{{n}*}}",
    )
    require(
        ctx.calculator.mon_bound(t.size, path.length, n).dominates(lifted_path.length),
        f"lifted path of length {lifted_path.length} exceeds Mon",
    )

    m1, m2, x = ctx.term(), ctx.term(), ctx.name()
    p1 = random_path(ctx.rng, m1, ctx.rng.randint(0, 2), ctx.limits)
    p2 = random_path(ctx.rng, m2, ctx.rng.randint(0, 2), ctx.limits)
    composed = ctx.lifter.substitution_path(p1, x, p2)
    replay(composed, ctx.limits)
    expected = p1.length + free_occurrences(m1, x) * p2.length
    require(
        composed.length == expected,
        f"substitution path of length {composed.length}, expected {expected}",
    )
    require(alpha_eq(composed.source, substitute(m1, x, m2)), "substitution path source")
    require(
        alpha_eq(composed.target, substitute(p1.target, x, p2.target)),
        "substitution path target",
    )


def check_join(ctx: CaseContext) -> None:
    """Chain joins land on the predicted reducts within their bounds."""
    start = ctx.term()
    k = ctx.rng.randint(0, ctx.config.max_chain_length)
    chain = random_chain(ctx.rng, start, k, ctx.generator, ctx.limits)
    r, l = chain.right_count, chain.left_count

    towards_source, towards_target = ctx.joiner.join_main(chain)
    require(alpha_eq(towards_source.reduct, star_iter(chain.source, r, ctx.limits)), "M_0^{r*}")
    require(alpha_eq(towards_target.reduct, star_iter(chain.target, l, ctx.limits)), "M_k^{l*}")

    refined = ctx.joiner.join_refined(chain)
    index, m_l = ctx.joiner.crossed_point(chain)
    require(m_l <= min(l, r), f"m_l = {m_l} exceeds min(l, r)")
    require(
        alpha_eq(refined.reduct, star_iter(chain.terms[index], m_l, ctx.limits)),
        "refined reduct differs from M_r^{m_l*}",
    )
    for cert in (towards_source, towards_target, refined):
        _require_bounds(cert)

    term_size = ctx.calculator.term_size_chain(chain)
    for i, term in enumerate(chain.terms):
        require(term_size.dominates(term.size), f"|M_{i}| = {term.size} exceeds TermSize")

    if k <= 4:
        joins = ctx.joiner.join_all(chain)
        require(alpha_eq(joins.towards_left[0].reduct, refined.reduct), "crossed reducts differ")
        require(alpha_eq(joins.towards_left[r].reduct, towards_source.reduct), "M_0 end differs")
        require(alpha_eq(joins.towards_right[l].reduct, towards_target.reduct), "M_k end differs")
        for cert in joins.certificates():
            _require_bounds(cert)

    left, right = random_peak(ctx.rng, ctx.term_with_redex(), 3, ctx.limits)
    for cert in ctx.joiner.join_reduction_peak(left, right):
        _require_bounds(cert)
    _require_bounds(ctx.joiner.join_peak_red(left, right))
    _require_bounds(ctx.joiner.join_peak_valley(left, right))


def check_improved(ctx: CaseContext) -> None:
    """At most n − 1 new-redex contractions, and the improved joins replay."""
    left, right = random_peak(ctx.rng, ctx.term_with_redex(), 4, ctx.limits)
    result = ctx.joiner.join_improved(left, right)
    a, b = result.left_new_redexes, result.right_new_redexes
    require(a <= left.length - 1, f"a = {a} with n = {left.length}")
    require(b <= right.length - 1, f"b = {b} with m = {right.length}")
    require(
        alpha_eq(result.towards_right.reduct, star_iter(right.target, a + 1, ctx.limits)),
        f"reduct differs from Q_m^{{{a + 1}*}}",
    )
    require(
        alpha_eq(result.towards_left.reduct, star_iter(left.target, b + 1, ctx.limits)),
        f"reduct differs from P_n^{{{b + 1}*}}",
    )
    _require_bounds(result.towards_right)
    _require_bounds(result.towards_left)


def check_bounds(ctx: CaseContext) -> None:
    """Unit values, monotonicity in every argument and Len < 𝟐_{n−1}."""
    calc = ctx.calculator
    for value, expected, label in (
        (calc.len_bound(4, 1), 1, "len 4 1"),
        (calc.len_bound(4, 2), Fraction(4 + 2 ** (4 - 1), 2) - 2, "len 4 2"),
        (calc.rev_bound(4, 1), Fraction(4 * 4, 2), "rev 4 1"),
        (calc.iter_exp(1, 4), 2 ** 2 ** 2 ** 2, "iter-exp 1 4"),
    ):
        require(value == BoundValue(expected), f"{label} = {value}, expected {expected}")
    left_only = calc.cr_eq_bound([Arrow.LEFT], 4, 4)
    require((left_only.left_len, left_only.right_len) == (BoundValue(0), BoundValue(1)), "cr-eq ←")
    right_only = calc.cr_eq_bound([Arrow.RIGHT], 4, 4)
    require((right_only.left_len, right_only.right_len) == (BoundValue(2), BoundValue(8)), "cr-eq →")

    size, n = ctx.rng.randint(1, 5), ctx.rng.randint(1, 3)
    require(
        calc.len_bound(size, n) < calc.iter_exp(size, n - 1)
        or calc.iter_exp(size, n - 1).is_overflow,
        f"Len({size}, {n}) is not below 𝟐_{n - 1}^{size}",
    )

    functions: Dict[str, Callable[[Sequence[int]], BoundValue]] = {
        "iter-exp": lambda a: calc.iter_exp(a[0], a[1]),
        "f": lambda a: calc.f_iter(a[0], a[1]),
        "len": lambda a: calc.len_bound(a[0], a[1]),
        "rev": lambda a: calc.rev_bound(a[0], a[1] + 1),
        "mon": lambda a: calc.mon_bound(a[0], a[1], a[2] + 1),
        "cr-red-left": lambda a: calc.cr_red_bound(a[1], a[0], a[2] + 1).left_len,
        "cr-red-right": lambda a: calc.cr_red_bound(a[1], a[0], a[2] + 1).right_len,
        "bl": lambda a: calc.bl_bound(a[1], a[0], a[2] + 1),
    }
    name = ctx.rng.choice(sorted(functions))
    args = [ctx.rng.randint(1, 4), ctx.rng.randint(0, 2), ctx.rng.randint(0, 1)]
    position = ctx.rng.randrange(len(args))
    bumped = list(args)
    bumped[position] += 1
    low, high = functions[name](args), functions[name](bumped)
    if not (low.is_overflow or high.is_overflow):
        require(low <= high, f"{name} decreases in argument {position} at {args}")


SUITES: Dict[str, Callable[[CaseContext], None]] = {
    "lemma1": check_lemma1,
    "redexcount": check_redexcount,
    "sizes": check_sizes,
    "star": check_star,
    "cofinal": check_cofinal,
    "mono": check_mono,
    "join": check_join,
    "improved": check_improved,
    "bounds": check_bounds,
}

ALL = "all"
SUITE_NAMES = (ALL,) + tuple(SUITES)


class HarnessRunner:
    """Runs property suites case by case."""

    def __init__(self, config: Optional[HarnessConfig] = None):
        """
        Initialize the runner.

        Args:
            config: Harness configuration
        """
        self.config = config or HarnessConfig()
        self.limits = self.config.limits
        self.calculator = BoundCalculator(self.config.bit_cap)
        self.joiner = ChainJoiner(JoinConfig(limits=self.limits, bit_cap=self.config.bit_cap))

    def case_seed(self, suite: str, index: int) -> str:
        return f"{self.config.seed}:{suite}:{index}"

    def _context(self, rng: random.Random) -> CaseContext:
        return CaseContext(
            config=self.config,
            rng=rng,
            generator=TermGenerator(rng, self.config.free_variables, self.config.weights),
            limits=self.limits,
            calculator=self.calculator,
            joiner=self.joiner,
            lifter=PathLifter(self.limits),
        )

    def run_case(self, suite: str, index: int) -> CaseResult:
        """Run one case; resource caps skip it, anything else raised fails it."""
        seed = self.case_seed(suite, index)
        check = SUITES[suite]
        try:
            check(self._context(random.Random(seed)))
        except ResourceCapError as exc:
            metrics_collector.record_cap_hit("harness")
            result = CaseResult(
                suite=suite, index=index, seed=seed, outcome=CaseOutcome.SKIP, message=str(exc)
            )
        except Exception as exc:
            logger.error(f"case {seed} failed: {exc}")
            result = CaseResult(
                suite=suite,
                index=index,
                seed=seed,
                outcome=CaseOutcome.FAIL,
                message=f"{type(exc).__name__}: {exc}",
            )
        else:
            result = CaseResult(suite=suite, index=index, seed=seed, outcome=CaseOutcome.PASS)
        metrics_collector.record_case(suite, result.outcome.value)
        return result

    def run_suite(self, suite: str) -> SuiteReport:
        if suite not in SUITES:
            raise InputError(f"Unknown suite {suite!r}; expected one of {', '.join(SUITE_NAMES)}")
        report = SuiteReport(suite=suite)
        for index in range(self.config.cases):
            result = self.run_case(suite, index)
            if result.outcome is CaseOutcome.PASS:
                report.passed += 1
            elif result.outcome is CaseOutcome.SKIP:
                report.skipped += 1
            else:
                report.failed += 1
                report.failures.append(result)
        if report.too_many_skips:
            logger.warning(f"{suite}: {report.skipped} of {report.total} cases hit a resource cap")
        logger.info(f"{suite}: {report.passed} passed, {report.failed} failed, {report.skipped} skipped")
        return report

    def run(self, suites: Sequence[str] = (ALL,)) -> HarnessReport:
        """
        Run the named suites in order; ``all`` expands to every suite.

        Returns:
            HarnessReport: Per-suite counts with reproduction seeds of failures
        """
        names: List[str] = []
        for suite in suites:
            for name in (SUITES if suite == ALL else (suite,)):
                if name not in SUITES:
                    raise InputError(f"Unknown suite {name!r}; expected one of {', '.join(SUITE_NAMES)}")
                if name not in names:
                    names.append(name)
        reports = run_with_deep_stack(lambda: [self.run_suite(name) for name in names])
        return HarnessReport(seed=self.config.seed, cases=self.config.cases, suites=reports)
