"""
Tests for settings, resource limits, metrics and the deep-stack runner.
"""

import sys

import pytest

from crjoin.config import LimitSettings, ResourceLimits, Settings
from crjoin.exceptions import EXIT_INPUT_ERROR, EXIT_RESOURCE_CAP, InputError, ResourceCapError
from crjoin.monitoring.metrics import get_metrics, metrics_collector
from crjoin.runtime import run_with_deep_stack


class TestSettings:
    def test_defaults(self):
        settings = Settings()
        assert settings.app_name == "crjoin"
        assert settings.limits.pattern_cap == 12
        assert settings.harness.free_variables == ["a", "b", "c"]

    def test_environment_overrides(self, monkeypatch):
        monkeypatch.setenv("CRJOIN_LIMIT_TERM_SIZE_CAP", "99")
        assert LimitSettings().term_size_cap == 99

    def test_limits_from_settings(self):
        settings = Settings()
        limits = ResourceLimits.from_settings(settings)
        assert limits.term_size_cap == settings.limits.term_size_cap


class TestResourceLimits:
    def test_caps_are_inclusive(self):
        limits = ResourceLimits(term_size_cap=10, path_length_cap=3)
        limits.check_term_size(10)
        limits.check_path_length(3)
        with pytest.raises(ResourceCapError):
            limits.check_term_size(11)
        with pytest.raises(ResourceCapError):
            limits.check_path_length(4)

    def test_rejects_non_positive_caps(self):
        with pytest.raises(ValueError):
            ResourceLimits(term_size_cap=0)


def test_exit_codes():
    assert InputError("x").exit_code == EXIT_INPUT_ERROR == 2
    assert ResourceCapError("x").exit_code == EXIT_RESOURCE_CAP == 3


def test_metrics_exposition():
    metrics_collector.record_case("lemma1", "pass")
    metrics_collector.record_bound_check(False)
    text = get_metrics().decode()
    assert 'crjoin_harness_cases_total{outcome="pass",suite="lemma1"}' in text
    assert 'crjoin_bound_checks_total{verdict="fail"}' in text


class TestDeepStack:
    def test_returns_and_restores_the_limit(self):
        before = sys.getrecursionlimit()

        def depth(n):
            return 0 if n == 0 else 1 + depth(n - 1)

        assert run_with_deep_stack(depth, 20_000, recursion_limit=50_000, stack_size_mb=64) == 20_000
        assert sys.getrecursionlimit() == before

    def test_reraises_in_the_caller(self):
        def fail():
            raise InputError("bad")

        with pytest.raises(InputError):
            run_with_deep_stack(fail, stack_size_mb=16)

    def test_nested_calls_stay_on_the_worker(self):
        def inner():
            return run_with_deep_stack(lambda: "inner")

        assert run_with_deep_stack(inner, stack_size_mb=16) == "inner"
