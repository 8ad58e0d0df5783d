"""
Monitoring and metrics for crjoin.
"""

from prometheus_client import Counter, Histogram, generate_latest
from prometheus_client.registry import CollectorRegistry

# Create a custom registry
registry = CollectorRegistry()

# Harness metrics
HARNESS_CASES = Counter(
    'crjoin_harness_cases_total',
    'Total number of harness cases by outcome',
    ['suite', 'outcome'],
    registry=registry
)

# Join metrics
JOIN_COUNT = Counter(
    'crjoin_joins_total',
    'Total number of join constructions',
    ['mode', 'status'],
    registry=registry
)

JOIN_DURATION = Histogram(
    'crjoin_join_duration_seconds',
    'Join construction duration in seconds',
    ['mode'],
    registry=registry
)

JOIN_PATH_LENGTH = Histogram(
    'crjoin_join_path_length_steps',
    'Length of constructed join paths',
    ['mode'],
    buckets=(0, 1, 2, 4, 8, 16, 64, 256, 1024, 4096, 65536),
    registry=registry
)

# Reduction metrics
STEP_COUNT = Counter(
    'crjoin_reduction_steps_total',
    'Total number of contracted beta-steps by strategy',
    ['strategy'],
    registry=registry
)

# Resource metrics
CAP_HITS = Counter(
    'crjoin_cap_hits_total',
    'Total number of resource cap hits',
    ['context'],
    registry=registry
)

BOUND_CHECKS = Counter(
    'crjoin_bound_checks_total',
    'Total number of bound comparisons by verdict',
    ['verdict'],
    registry=registry
)


class MetricsCollector:
    """Metrics collector for crjoin runs."""

    def record_case(self, suite: str, outcome: str):
        """Record a harness case outcome (pass, fail or skip)."""
        HARNESS_CASES.labels(suite=suite, outcome=outcome).inc()

    def record_join(self, mode: str, status: str, duration: float, lengths=()):
        """Record join construction metrics."""
        JOIN_COUNT.labels(mode=mode, status=status).inc()
        JOIN_DURATION.labels(mode=mode).observe(duration)
        for length in lengths:
            JOIN_PATH_LENGTH.labels(mode=mode).observe(length)

    def record_steps(self, strategy: str, count: int):
        """Record contracted steps of a strategy run."""
        STEP_COUNT.labels(strategy=strategy).inc(count)

    def record_cap_hit(self, context: str):
        """Record a resource cap hit."""
        CAP_HITS.labels(context=context).inc()

    def record_bound_check(self, passed: bool):
        """Record a bound comparison."""
        BOUND_CHECKS.labels(verdict="pass" if passed else "fail").inc()


# Global metrics collector instance
metrics_collector = MetricsCollector()


def get_metrics() -> bytes:
    """Get all metrics in Prometheus format."""
    return generate_latest(registry)
