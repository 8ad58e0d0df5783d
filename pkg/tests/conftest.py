"""
Shared fixtures for the crjoin test suite.
"""

import pytest
from click.testing import CliRunner

from crjoin.bounds.calculator import BoundCalculator
from crjoin.config import ResourceLimits
from crjoin.join.joiner import ChainJoiner, JoinConfig
from crjoin.reduction.lifting import PathLifter
from crjoin.syntax.parser import parse_term


@pytest.fixture
def limits():
    return ResourceLimits(term_size_cap=20_000, path_length_cap=50_000)


@pytest.fixture
def calculator():
    return BoundCalculator()


@pytest.fixture
def joiner(limits):
    return ChainJoiner(JoinConfig(limits=limits))


@pytest.fixture
def lifter(limits):
    return PathLifter(limits)


@pytest.fixture
def term():
    """Parse surface syntax."""
    return parse_term


@pytest.fixture
def runner():
    return CliRunner()


@pytest.fixture
def write(tmp_path):
    """Write text to a file under tmp_path and return its path as a string."""

    def _write(name: str, text: str) -> str:
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)

    return _write
