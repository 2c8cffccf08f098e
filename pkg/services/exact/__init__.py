"""
Exact Arithmetic Package

Rational parsing and dense Fraction matrix helpers used by every exact
identity check.
"""

from .rational import format_rational, parse_positive_rational, parse_rational
from .matrix import (
    combine,
    compare,
    compare_scalar,
    diagonal,
    identity,
    matmul,
    matmul_chain,
    to_float,
    to_grid,
    to_strings,
    transpose,
)

__all__ = [
    "format_rational",
    "parse_positive_rational",
    "parse_rational",
    "combine",
    "compare",
    "compare_scalar",
    "diagonal",
    "identity",
    "matmul",
    "matmul_chain",
    "to_float",
    "to_grid",
    "to_strings",
    "transpose",
]
