"""
Equality joins for crjoin.

β-equality chains, the constructive Church-Rosser joins over them and
the symbolic classification of arrow patterns.
"""

from .chains import (
    chain_append,
    chain_arrow_counts,
    chain_from_path,
    chain_reverse,
    infer_witness,
    sub_chain,
    validate_chain,
    verify_certificate,
)
from .joiner import ChainJoiner, ImprovedJoin, JoinConfig
from .models import EqualityChain, JoinCertificate, ChainJoins
from .patterns import PatternRow, PatternTable, classify, enumerate_patterns

__all__ = [
    "chain_append",
    "chain_arrow_counts",
    "chain_from_path",
    "chain_reverse",
    "infer_witness",
    "sub_chain",
    "validate_chain",
    "verify_certificate",
    "ChainJoiner",
    "ImprovedJoin",
    "JoinConfig",
    "EqualityChain",
    "JoinCertificate",
    "ChainJoins",
    "PatternRow",
    "PatternTable",
    "classify",
    "enumerate_patterns",
]
