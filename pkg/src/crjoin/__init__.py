"""
crjoin: constructive Church-Rosser joins for the untyped λ-calculus.

Core package for joining β-equality chains via iterated Takahashi
translation, tracking residuals and developments, and evaluating the
quantitative bounds on reduction lengths and term sizes.
"""

__version__ = "1.0.0"
