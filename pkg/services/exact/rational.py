"""
Rational Parsing Module

Conversions between user-facing text and exact rationals. Decimal input such
as "0.25" or "1e-3" is read as the exact rational it spells, never through a
binary float.
"""

import logging
from fractions import Fraction
from typing import Union

from services.errors import InvalidDistributionError

logger = logging.getLogger(__name__)

RationalLike = Union[Fraction, int, float, str]


def parse_rational(value: RationalLike) -> Fraction:
    """
    Parse an integer, "p/q" string, decimal string or float into a Fraction.
    Floats are read through their shortest decimal representation.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        return Fraction(repr(value))
    text = str(value).strip()
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as e:
        raise ValueError(f"Not a rational number: {value!r}") from e


def parse_positive_rational(value: RationalLike) -> Fraction:
    """Parse a variance; anything not strictly positive is an invalid distribution."""
    parsed = parse_rational(value)
    if parsed <= 0:
        raise InvalidDistributionError(
            f"sigma2 must be positive, got {parsed}", {"sigma2": str(parsed)}
        )
    return parsed


def format_rational(value: Fraction) -> str:
    """Render as "p/q", or "p" when the denominator is 1."""
    return str(value)
