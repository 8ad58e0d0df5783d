"""
Constructive Church-Rosser joins for β-equality chains and reduction peaks.

Every join is assembled from one primitive, the half join of a chain
M₀ =β Mₖ into Mₖ ↠ M₀^{r*}: a Left link prepends its step, a Right link
Mᵢ → Mᵢ₊₁ develops the residuals back to Mᵢ* and lifts the path built so
far one Takahashi level. Joins towards the other end run the same
primitive on the reversed chain.
"""

import logging
import time
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

from ..bounds.calculator import DEFAULT_BIT_CAP, BoundCalculator
from ..bounds.models import BoundCheck
from ..config import DEFAULT_LIMITS, ResourceLimits
from ..exceptions import (
    CrJoinError,
    InputError,
    OrderViolationError,
    PeakMismatchError,
    ReplayError,
)
from ..monitoring.metrics import metrics_collector
from ..reduction.lifting import PathLifter
from ..reduction.models import Arrow, ReductionPath
from ..reduction.steps import count_new_redex_contractions, development_segments, star_iter_path
from ..terms.core import alpha_eq
from ..terms.models import Term
from .chains import (
    chain_append,
    chain_arrow_counts,
    chain_from_path,
    chain_reverse,
    sub_chain,
    verify_certificate,
)
from .models import EqualityChain, JoinCertificate, ChainJoins

logger = logging.getLogger(__name__)


@dataclass
class JoinConfig:
    """Join construction parameters."""

    limits: ResourceLimits = DEFAULT_LIMITS
    bit_cap: int = DEFAULT_BIT_CAP
    check_bounds: bool = True
    verify: bool = True


@dataclass(frozen=True)
class ImprovedJoin:
    """Certificates of the new-redex refined peak join."""

    towards_right: JoinCertificate
    towards_left: JoinCertificate
    left_new_redexes: int
    right_new_redexes: int


class ChainJoiner:
    """Builds join certificates for equality chains and peaks."""

    def __init__(self, config: Optional[JoinConfig] = None):
        """
        Initialize the joiner.

        Args:
            config: Join configuration
        """
        self.config = config or JoinConfig()
        self.calculator = BoundCalculator(self.config.bit_cap)

    # Primitives

    def _lifter(self) -> PathLifter:
        return PathLifter(self.config.limits)

    def towards_source(self, chain: EqualityChain, lifter: Optional[PathLifter] = None) -> ReductionPath:
        """Mₖ ↠ M₀^{r*} where r is the number of Right links."""
        lifter = lifter or self._lifter()
        path = ReductionPath.empty(chain.source)
        for i, arrow in enumerate(chain.arrows):
            step = chain.link(i)
            if arrow is Arrow.RIGHT:
                path = lifter.cofinal_step(step).then(lifter.mono_lift_path(path, 1))
            else:
                path = path.prepend(step)
            self.config.limits.check_path_length(path.length)
        return path

    def towards_target(self, chain: EqualityChain, lifter: Optional[PathLifter] = None) -> ReductionPath:
        """M₀ ↠ Mₖ^{l*}, the mirror of :meth:`towards_source`."""
        return self.towards_source(chain_reverse(chain), lifter)

    def _half(
        self, chain: EqualityChain, label: str, lifter: PathLifter
    ) -> Tuple[ReductionPath, List[BoundCheck]]:
        path = self.towards_source(chain, lifter)
        checks: List[BoundCheck] = []
        if self.config.check_bounds and chain.length:
            triple = self.calculator.cr_eq_bound(
                chain.arrows, chain.source.size, self.calculator.term_size_chain(chain)
            )
            checks.append(BoundCheck.compare(f"{label} <= CR-eq", path.length, triple.right_len))
        return path, checks

    def _star_path(
        self, term: Term, n: int, label: str
    ) -> Tuple[ReductionPath, List[BoundCheck]]:
        path = star_iter_path(term, n, self.config.limits)
        checks: List[BoundCheck] = []
        if self.config.check_bounds and n:
            bound = self.calculator.len_bound(term.size, n)
            checks.append(BoundCheck.compare(f"{label} <= Len", path.length, bound))
        return path, checks

    def _extend(
        self, path: ReductionPath, n: int, label: str
    ) -> Tuple[ReductionPath, List[BoundCheck]]:
        extension, checks = self._star_path(path.target, n, label)
        return path.then(extension), checks

    def _certificate(
        self,
        left: ReductionPath,
        right: ReductionPath,
        descriptor: str,
        checks: Sequence[BoundCheck],
    ) -> JoinCertificate:
        if not alpha_eq(left.target, right.target):
            raise ReplayError(f"{descriptor}: the two paths end at different terms")
        cert = JoinCertificate(
            reduct=right.target,
            left_path=left,
            right_path=right,
            descriptor=descriptor,
            bound_checks=tuple(checks),
        )
        if self.config.verify:
            verify_certificate(cert, self.config.limits)
        for check in cert.bound_checks:
            metrics_collector.record_bound_check(check.passed)
            if not check.passed:
                logger.warning(
                    f"{descriptor}: {check.name} failed ({check.actual} > {check.bound})"
                )
        return cert

    def _timed(self, mode: str, build):
        start_time = time.time()
        try:
            result = build()
        except CrJoinError as exc:
            metrics_collector.record_join(mode, exc.error_code, time.time() - start_time)
            raise
        certs = result if isinstance(result, (tuple, list)) else [result]
        lengths = [
            length
            for cert in certs
            if isinstance(cert, JoinCertificate)
            for length in cert.lengths
        ]
        metrics_collector.record_join(mode, "success", time.time() - start_time, lengths)
        logger.debug(f"{mode} join finished in {time.time() - start_time:.3f}s")
        return result

    # Chain joins

    def join_main(self, chain: EqualityChain) -> Tuple[JoinCertificate, JoinCertificate]:
        """
        Join both ends at M₀^{r*} and at Mₖ^{l*}.

        Args:
            chain: M₀ =β^k Mₖ with r Right and l Left links

        Returns:
            Tuple of certificates for M₀^{r*} and Mₖ^{l*}
        """
        return self._timed("main", lambda: self._join_main(chain))

    def _join_main(self, chain: EqualityChain) -> Tuple[JoinCertificate, JoinCertificate]:
        lifter = self._lifter()
        r, l = chain.right_count, chain.left_count
        logger.debug(f"main join of {chain.pattern() or 'empty chain'} (r={r}, l={l})")

        left_a, checks_a = self._star_path(chain.source, r, "left")
        right_a, half_checks = self._half(chain, "right", lifter)
        checks_a += half_checks
        if self.config.check_bounds and chain.length:
            triple = self.calculator.cr_eq_bound(
                chain.arrows, chain.source.size, self.calculator.term_size_chain(chain)
            )
            checks_a.append(BoundCheck.compare("left <= CR-eq", left_a.length, triple.left_len))
        cert_a = self._certificate(left_a, right_a, f"M_0^{{{r}*}}", checks_a)

        left_b, checks_b = self._half(chain_reverse(chain), "left", lifter)
        right_b, star_checks = self._star_path(chain.target, l, "right")
        checks_b += star_checks
        cert_b = self._certificate(left_b, right_b, f"M_{chain.length}^{{{l}*}}", checks_b)
        return cert_a, cert_b

    def crossed_point(self, chain: EqualityChain) -> Tuple[int, int]:
        """(r, m_l): the crossed index and its iteration count."""
        r = chain.right_count
        m_l, _ = chain_arrow_counts(chain, 0, r)
        return r, m_l

    def join_refined(self, chain: EqualityChain) -> JoinCertificate:
        """Join both ends at the crossed point M_r^{m_l*}."""
        return self._timed("refined", lambda: self._join_refined(chain))

    def _join_refined(self, chain: EqualityChain) -> JoinCertificate:
        left, right, checks, r, m_l = self._refined_paths(chain, self._lifter())
        return self._certificate(left, right, f"M_{r}^{{{m_l}*}}", checks)

    def _refined_paths(
        self, chain: EqualityChain, lifter: PathLifter
    ) -> Tuple[ReductionPath, ReductionPath, List[BoundCheck], int, int]:
        r, m_l = self.crossed_point(chain)
        if m_l > min(chain.left_count, r):
            raise ReplayError(f"crossed point iterations {m_l} exceed min(l, r)")
        logger.debug(f"refined join at M_{r} with {m_l} iterations")

        left, checks = self._half(chain_reverse(sub_chain(chain, 0, r)), "left", lifter)
        right, right_checks = self._half(sub_chain(chain, r, chain.length), "right", lifter)
        return left, right, checks + right_checks, r, m_l

    def join_all(self, chain: EqualityChain) -> ChainJoins:
        """Common reducts at every crossed index and paths from every term."""
        return self._timed("all", lambda: self._join_all(chain))

    def _join_all(self, chain: EqualityChain) -> ChainJoins:
        lifter = self._lifter()
        k = chain.length
        r, m_l = self.crossed_point(chain)
        l = chain.left_count

        towards_left = []
        for i in range(r + 1):
            a = r - i
            _, exponent = chain_arrow_counts(chain, a, k)
            right, checks = self._half(sub_chain(chain, a, k), "right", lifter)
            left, left_checks = self._half(chain_reverse(sub_chain(chain, 0, a)), "left", lifter)
            left, ext_checks = self._extend(left, i, "left extension")
            towards_left.append(
                self._certificate(
                    left, right, f"M_{a}^{{{exponent}*}}", checks + left_checks + ext_checks
                )
            )

        towards_right = []
        for j in range(l + 1):
            b = r + j
            exponent, _ = chain_arrow_counts(chain, 0, b)
            left, checks = self._half(chain_reverse(sub_chain(chain, 0, b)), "left", lifter)
            right, right_checks = self._half(sub_chain(chain, b, k), "right", lifter)
            right, ext_checks = self._extend(right, j, "right extension")
            towards_right.append(
                self._certificate(
                    left, right, f"M_{b}^{{{exponent}*}}", checks + right_checks + ext_checks
                )
            )

        crossed = towards_left[0].reduct
        term_paths = []
        for i in range(k + 1):
            if i <= r:
                path = self.towards_source(chain_reverse(sub_chain(chain, i, r)), lifter)
                extra, _ = chain_arrow_counts(chain, 0, i)
            else:
                path = self.towards_source(sub_chain(chain, r, i), lifter)
                _, reached = chain_arrow_counts(chain, r, i)
                extra = m_l - reached
            path = path.then(star_iter_path(path.target, extra, self.config.limits))
            if not alpha_eq(path.target, crossed):
                raise ReplayError(f"path from M_{i} misses the crossed reduct")
            term_paths.append(path)

        return ChainJoins(
            right_count=r,
            left_count=l,
            crossed_iterations=m_l,
            towards_left=tuple(towards_left),
            towards_right=tuple(towards_right),
            term_paths=tuple(term_paths),
            crossed_reduct=crossed,
        )

    # Peak joins

    def _peak_chain(self, left: ReductionPath, right: ReductionPath) -> EqualityChain:
        if not alpha_eq(left.source, right.source):
            raise PeakMismatchError("The two sides of the peak start at different terms")
        return chain_append(chain_reverse(chain_from_path(left)), chain_from_path(right))

    @staticmethod
    def _orient(left: ReductionPath, right: ReductionPath) -> Tuple[int, int]:
        n, m = left.length, right.length
        if n > m:
            raise OrderViolationError(f"peak needs n <= m, got n={n}, m={m}")
        if n < 1:
            raise InputError("peak sides must contain at least one step")
        return n, m

    def join_reduction_peak(
        self, left: ReductionPath, right: ReductionPath
    ) -> Tuple[JoinCertificate, JoinCertificate]:
        """
        Join Pₙ ↞ M ↠ Q_m at Q_m^{n*} and at Q_{m−n}^{n*}.

        Args:
            left: M ↠ⁿ Pₙ
            right: M ↠ᵐ Q_m with n <= m

        Returns:
            Tuple of certificates; each left path starts at Pₙ, each right
            path at Q_m
        """
        return self._timed("peak", lambda: self._join_reduction_peak(left, right))

    def _join_reduction_peak(
        self, left: ReductionPath, right: ReductionPath
    ) -> Tuple[JoinCertificate, JoinCertificate]:
        chain = self._peak_chain(left, right)
        n, m = self._orient(left, right)
        lifter = self._lifter()
        size = left.source.size

        to_q, checks = self._half(chain_reverse(chain), "left", lifter)
        q_star, star_checks = self._star_path(chain.target, n, "right")
        checks += star_checks
        if self.config.check_bounds:
            triple = self.calculator.cr_red_bound(m, size, n)
            checks.append(BoundCheck.compare("left <= CR-red", to_q.length, triple.right_len))
            checks.append(BoundCheck.compare("right <= CR-red", q_star.length, triple.left_len))
        first = self._certificate(to_q, q_star, f"Q_{m}^{{{n}*}}", checks)

        to_crossed, from_q, refined_checks, _, _ = self._refined_paths(chain, lifter)
        if self.config.check_bounds:
            triple = self.calculator.cr_red_bound(m - n, size, n)
            refined_checks.append(
                BoundCheck.compare("left <= CR-red", to_crossed.length, triple.right_len)
            )
            refined_checks.append(
                BoundCheck.compare(
                    "right <= Rev",
                    from_q.length,
                    self.calculator.rev_bound(chain.terms[m].size, n),
                )
            )
        second = self._certificate(to_crossed, from_q, f"Q_{m - n}^{{{n}*}}", refined_checks)
        return first, second

    def join_peak_red(self, left: ReductionPath, right: ReductionPath) -> JoinCertificate:
        """Join Pₙ ↞ M ↠ Q_m at Pₙ^{m*}, bounded by CR-red(n, |M|, m)."""
        return self._timed("peak-red", lambda: self._join_peak_red(left, right))

    def _join_peak_red(self, left: ReductionPath, right: ReductionPath) -> JoinCertificate:
        chain = self._peak_chain(left, right)
        n, m = left.length, right.length
        if m < 1:
            raise InputError("the right side of the peak must contain at least one step")
        lifter = self._lifter()
        p_star, checks = self._star_path(chain.source, m, "left")
        to_p, half_checks = self._half(chain, "right", lifter)
        checks += half_checks
        if self.config.check_bounds:
            triple = self.calculator.cr_red_bound(n, left.source.size, m)
            checks.append(BoundCheck.compare("left <= CR-red", p_star.length, triple.left_len))
            checks.append(BoundCheck.compare("right <= CR-red", to_p.length, triple.right_len))
        return self._certificate(p_star, to_p, f"P_{n}^{{{m}*}}", checks)

    def join_peak_valley(self, left: ReductionPath, right: ReductionPath) -> JoinCertificate:
        """Join Pₙ ↞ M ↠ Q_m at M^{m*}, bounded by V-size(n, |M|, m)."""
        return self._timed("peak-valley", lambda: self._join_peak_valley(left, right))

    def _join_peak_valley(self, left: ReductionPath, right: ReductionPath) -> JoinCertificate:
        self._peak_chain(left, right)
        n, m = self._orient(left, right)
        lifter = self._lifter()
        source = left.source

        from_p = lifter.cofinal_path(left)
        from_p, checks = self._extend(from_p, m - n, "left extension")
        from_q = lifter.cofinal_path(right)
        if self.config.check_bounds:
            triple = self.calculator.v_size_bound(n, source.size, m)
            checks.append(BoundCheck.compare("left <= V-size", from_p.length, triple.left_len))
            checks.append(BoundCheck.compare("right <= V-size", from_q.length, triple.right_len))
        return self._certificate(from_p, from_q, f"M^{{{m}*}}", checks)

    def join_improved(self, left: ReductionPath, right: ReductionPath) -> ImprovedJoin:
        """
        Join a peak using the count of new-redex contractions on each side.

        With a new-redex contractions on the left and b on the right, builds
        Pₙ ↠ Q_m^{(a+1)*} and Q_m ↠ Pₙ^{(b+1)*}.
        """
        return self._timed("improved", lambda: self._join_improved(left, right))

    def _improved_side(
        self, own: ReductionPath, other: ReductionPath, lifter: PathLifter
    ) -> Tuple[ReductionPath, int, List[BoundCheck]]:
        """Own end ↠ (other end)^{(a+1)*} where a counts own new redexes."""
        a = count_new_redex_contractions(own)
        segments = development_segments(own)
        back = ReductionPath.empty(own.source)
        for segment in segments:
            back = lifter.complete_development(segment).then(lifter.mono_lift_path(back, 1))
            self.config.limits.check_path_length(back.length)
        # Segmentation never yields more than a + 1 developments
        back, checks = self._extend(back, a + 1 - len(segments), "extension")
        lifted = lifter.mono_lift_path(other, a + 1)
        if self.config.check_bounds:
            bound = self.calculator.mon_bound(own.source.size, other.length, a + 1)
            checks.append(BoundCheck.compare("lift <= Mon", lifted.length, bound))
        return back.then(lifted), a, checks

    def _join_improved(self, left: ReductionPath, right: ReductionPath) -> ImprovedJoin:
        if not alpha_eq(left.source, right.source):
            raise PeakMismatchError("The two sides of the peak start at different terms")
        lifter = self._lifter()

        p_to_q, a, checks = self._improved_side(left, right, lifter)
        q_star, star_checks = self._star_path(right.target, a + 1, "right")
        towards_right = self._certificate(
            p_to_q, q_star, f"Q_{right.length}^{{{a + 1}*}}", checks + star_checks
        )

        q_to_p, b, checks = self._improved_side(right, left, lifter)
        p_star, star_checks = self._star_path(left.target, b + 1, "left")
        towards_left = self._certificate(
            p_star, q_to_p, f"P_{left.length}^{{{b + 1}*}}", checks + star_checks
        )
        return ImprovedJoin(
            towards_right=towards_right,
            towards_left=towards_left,
            left_new_redexes=a,
            right_new_redexes=b,
        )

