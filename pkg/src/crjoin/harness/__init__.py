"""
Random-instance harness for crjoin.

Generators for terms, paths, chains and peaks, the seeded property suites
run by ``crjoin check``, and the Church-numeral tower example.
"""

from .example2 import Example2Report, build_chain, example_terms, run_example2, tower_numeral
from .generators import TermGenerator, TermWeights, random_chain, random_path, random_peak
from .suites import (
    ALL,
    SUITE_NAMES,
    SUITES,
    CaseOutcome,
    CaseResult,
    HarnessConfig,
    HarnessReport,
    HarnessRunner,
    SuiteReport,
)

__all__ = [
    "Example2Report",
    "build_chain",
    "example_terms",
    "run_example2",
    "tower_numeral",
    "TermGenerator",
    "TermWeights",
    "random_chain",
    "random_path",
    "random_peak",
    "ALL",
    "SUITE_NAMES",
    "SUITES",
    "CaseOutcome",
    "CaseResult",
    "HarnessConfig",
    "HarnessReport",
    "HarnessRunner",
    "SuiteReport",
]
