"""
Monitoring for crjoin.
"""

from .metrics import MetricsCollector, get_metrics, metrics_collector, registry

__all__ = ["MetricsCollector", "get_metrics", "metrics_collector", "registry"]
