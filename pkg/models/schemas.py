"""
Data Models and Schemas

This module contains Pydantic models for the JSON documents read and written
by the command line: identity reports, the verify report, and the payloads of
the factor, hermite, moments, optimize and gain commands. Rationals cross this
boundary as "p/q" strings.
"""

from typing import Dict, List, Literal, Optional, Union

from pydantic import BaseModel, Field, field_validator


class Mismatch(BaseModel):
    """
    First entry where the two sides of an identity differ.
    row/col are None for scalar identities such as determinants.
    """
    row: Optional[int] = None
    col: Optional[int] = None
    quantity: Optional[str] = None
    lhs: str
    rhs: str


class IdentityReport(BaseModel):
    """
    Result of an exact identity check.
    Truthiness follows `holds` so a report can be used as a boolean.
    """
    name: str
    holds: bool
    first_mismatch: Optional[Mismatch] = None

    def __bool__(self) -> bool:
        return self.holds


class CheckResult(BaseModel):
    """One (check, M, sigma^2) cell of the verify grid."""
    name: str
    m: int
    sigma2: Optional[str] = None
    status: Literal["pass", "fail"]
    first_mismatch: Optional[Mismatch] = None
    elapsed_ms: float


class VerifyReport(BaseModel):
    """
    Aggregate verify report.
    overall is "pass" iff every check passed.
    """
    m_max: int
    sigma2: List[str]
    checks: List[CheckResult]
    overall: Literal["pass", "fail"]


class FactorPayload(BaseModel):
    lower: List[List[str]]
    pivots: List[str]
    source: Literal["elimination", "closed-form"]


class HermitePayload(BaseModel):
    n: int
    packed: List[str]
    dense: List[str]


class MomentPayload(BaseModel):
    m: int
    kind: str
    even_moments: List[str]
    psd_rank_a: Optional[int] = None
    psd_rank_b: Optional[int] = None


class MomentFile(BaseModel):
    """
    Moment file layout: {"m": M, "even_moments": ["1", "1/4", ...]}.
    Entries may be integers or rational strings.
    """
    m: int = Field(ge=1)
    even_moments: List[Union[int, str]]

    @field_validator("even_moments")
    @classmethod
    def _not_empty(cls, value: List[Union[int, str]]) -> List[Union[int, str]]:
        if not value:
            raise ValueError("even_moments must not be empty")
        return value


class CoefficientFile(BaseModel):
    """Coefficient file layout: {"a": ["15", "-10", "1"]}."""
    a: List[Union[int, str]] = Field(min_length=1)


class OptimizePayload(BaseModel):
    gain: float
    gain_exact: str
    normalized_gain: float
    a: List[float]
    a_exact: List[str]
    eigenvalues: List[float]
    whitened_vector: List[float]
    residual: float
    multiplicity: int
    normalized_by_last: bool
    exact_whitening: bool


class MonteCarloPayload(BaseModel):
    estimate: float
    standard_error: float
    samples: int
    seed: int
    proposal_scale: float


class GainPayload(BaseModel):
    a: List[str]
    gain: float
    gain_exact: str
    monte_carlo: Optional[MonteCarloPayload] = None


class ErrorPayload(BaseModel):
    error: str
    message: str
    detail: Dict[str, Union[int, float, str, None]] = {}
