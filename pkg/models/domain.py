"""
Domain Models

This module contains the immutable value types shared by the moment, Hankel,
Hermite, factorization and optimizer services. Exact quantities are stored as
fractions.Fraction inside tuples so a model can be shared between threads.
"""

from enum import Enum
from fractions import Fraction
from typing import Literal, Optional, Tuple

from pydantic import BaseModel, ConfigDict

Grid = Tuple[Tuple[Fraction, ...], ...]


class _Frozen(BaseModel):
    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)


class DistributionKind(str, Enum):
    """Source of a moment sequence."""
    GAUSSIAN = "gaussian"
    UNIFORM = "uniform"
    EXPLICIT = "explicit-moments"
    EMPIRICAL = "empirical-samples"


class DistributionSpec(_Frozen):
    """
    Symmetric signal distribution, parameterized by its variance.
    Explicit and empirical kinds carry their payload instead of a formula.
    """
    kind: DistributionKind
    sigma2: Optional[Fraction] = None
    moments: Tuple[Fraction, ...] = ()
    samples: Tuple[Fraction, ...] = ()
    source_path: Optional[str] = None


class MomentSequence(_Frozen):
    """
    Even moments mu[k] = E(s^(2k)) for k = 0..2M-1.
    Odd moments are zero by symmetry and never stored.
    """
    mu: Tuple[Fraction, ...]
    source: DistributionSpec

    @property
    def m(self) -> int:
        return len(self.mu) // 2

    @property
    def sigma2(self) -> Fraction:
        """Signal power E(s^2)."""
        return self.mu[1] if len(self.mu) > 1 else Fraction(0)


class HankelMatrix(_Frozen):
    """
    Moment matrix with entries[i][j] = mu[i + j + shift].
    shift 0 gives the A family, shift 1 the B family.
    """
    m: int
    entries: Grid
    shift: Literal[0, 1]


class DiagonalMatrix(_Frozen):
    diag: Tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.diag)

    def inverse(self) -> "DiagonalMatrix":
        return DiagonalMatrix(diag=tuple(1 / value for value in self.diag))


class HermiteCoefficients(_Frozen):
    """
    Packed coefficients of the probabilists' Hermite polynomial H_n.
    beta runs over (1, s^2, s^4, ...) for even n and s*(1, s^2, ...) for odd n.
    """
    n: int
    beta: Tuple[Fraction, ...]


class HermiteTriangular(_Frozen):
    """Unit lower-triangular matrix whose rows are packed Hermite coefficients."""
    m: int
    rows: Grid
    parity: Literal["odd", "even"]


class LdlFactorization(_Frozen):
    """
    Square-root-free factorization H = lower * diag(pivots) * lower^T.
    rank counts the strictly positive pivots.
    """
    lower: Grid
    pivots: Tuple[Fraction, ...]
    rank: int


class OddPolynomial(_Frozen):
    """
    Odd distortion polynomial f(s) = s * sum_k a[k] * s^(2k).
    The order is N = 2M - 1 for M coefficients.
    """
    a: Tuple[Fraction, ...]

    @property
    def m(self) -> int:
        return len(self.a)

    @property
    def order(self) -> int:
        return 2 * len(self.a) - 1


class GainResult(_Frozen):
    """
    Outcome of the Rayleigh-quotient maximization.
    gain is the largest eigenvalue of the whitened matrix C.
    """
    gain: float
    normalized_gain: float  # sigma^2 * gain, the unit-power convention
    gain_exact: Fraction  # exact gain of the rationalized coefficients
    a: OddPolynomial
    coefficients: Tuple[float, ...]
    eigenvalues: Tuple[float, ...]
    whitened_vector: Tuple[float, ...]
    residual: float
    normalized_by_last: bool
    multiplicity: int
    exact_whitening: bool
