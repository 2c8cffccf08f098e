"""
Domain Errors Module

This module defines the exception hierarchy raised by the moment, factorization
and optimizer services. Every error can render itself as the structured JSON
body the command line prints on exit code 1.
"""

import logging
from typing import Any, Dict, Optional

logger = logging.getLogger(__name__)


class HankelError(Exception):
    """
    Base class for all domain errors.
    Carries a free-form detail mapping for the JSON error body.
    """

    def __init__(self, message: str, detail: Optional[Dict[str, Any]] = None):
        super().__init__(message)
        self.message = message
        self.detail = detail or {}

    def to_payload(self) -> Dict[str, Any]:
        """Build the structured error body used on the command line."""
        return {
            "error": type(self).__name__,
            "message": self.message,
            "detail": self.detail,
        }


class InvalidDistributionError(HankelError, ValueError):
    """Raised for a non-positive variance or a malformed moment list."""


class DimensionError(HankelError, ValueError):
    """Raised when a moment sequence or packed vector is too short for the requested order."""


class EmptyInputError(HankelError, ValueError):
    """Raised when an empirical sample list is empty."""


class NotPositiveDefiniteError(HankelError):
    """
    Raised by the LDL factorization on a non-positive pivot.
    Signals an invalid or rank-deficient moment sequence.
    """

    def __init__(self, index: int, pivot: Any):
        super().__init__(
            f"Matrix is not positive definite: pivot {index} equals {pivot}",
            {"index": index, "pivot": str(pivot)},
        )
        self.index = index
        self.pivot = pivot


class ConditioningError(HankelError):
    """
    Raised by the floating path when a Cholesky pivot underflows or when the
    recovered coefficients no longer reproduce the computed gain.
    The exact LDL path should be used instead.
    """

    def __init__(
        self,
        index: Optional[int],
        ratio: float,
        message: Optional[str] = None,
        detail: Optional[Dict[str, Any]] = None,
    ):
        super().__init__(
            message or f"Floating Cholesky broke down at pivot {index}; use the exact LDL path",
            {"index": index, "ratio": ratio, **(detail or {})},
        )
        self.index = index
        self.ratio = ratio


class DegeneratePolynomialError(HankelError, ValueError):
    """Raised when the gain denominator aBa^T vanishes."""


class IterationLimitError(HankelError):
    """Raised when the Jacobi eigensolver exceeds its sweep limit."""

    def __init__(self, sweeps: int, residual: float):
        super().__init__(
            f"Eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {residual:.3e})",
            {"sweeps": sweeps, "residual": residual},
        )
        self.sweeps = sweeps
        self.residual = residual
