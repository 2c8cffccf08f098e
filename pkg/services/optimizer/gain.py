"""
Gain Optimizer Module

The receiving gain G(a) = a DAD a^T / a B a^T of an odd distortion polynomial,
its maximization through whitening by the Cholesky factor of B, and the
recovery of the optimal coefficient vector a = x L^-1 from the top
eigenvector x of C = L^-1 DAD L^-T.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Sequence, Tuple, Union

import numpy as np
from scipy.linalg import solve_triangular

from models.domain import DiagonalMatrix, DistributionSpec, GainResult, HankelMatrix, MomentSequence, OddPolynomial
from services.errors import ConditioningError, DegeneratePolynomialError, DimensionError
from services.exact import matrix as mx
from services.exact.rational import format_rational, parse_rational
from services.factorization import float_cholesky, ldl_decompose, unit_lower_inverse
from services.hankel import build_A, build_B, order_diagonal
from services.moments import even_moments
from services.optimizer.eigen import symmetric_eigen

logger = logging.getLogger(__name__)

MULTIPLICITY_TOLERANCE = 1e-9
MAX_DENOMINATOR = 10 ** 12


def _exact_coefficients(a: Union[OddPolynomial, Sequence]) -> Tuple[Fraction, ...]:
    values = a.a if isinstance(a, OddPolynomial) else a
    return tuple(parse_rational(value) for value in values)


def gain_of(a: Union[OddPolynomial, Sequence], moments: MomentSequence) -> Fraction:
    """Exact a DAD a^T / a B a^T for the moments of the signal distribution."""
    coefficients = _exact_coefficients(a)
    m = len(coefficients)
    if m == 0:
        raise DegeneratePolynomialError("Coefficient vector is empty")
    A = build_A(moments, m).entries
    B = build_B(moments, m).entries
    weighted = [value * d for value, d in zip(coefficients, order_diagonal(m).diag)]
    numerator = sum(
        (weighted[i] * A[i][j] * weighted[j] for i in range(m) for j in range(m)), Fraction(0)
    )
    denominator = sum(
        (coefficients[i] * B[i][j] * coefficients[j] for i in range(m) for j in range(m)), Fraction(0)
    )
    if denominator == 0:
        raise DegeneratePolynomialError(
            "Gain denominator a B a^T vanishes", {"m": m}
        )
    return numerator / denominator


def _dad(A: HankelMatrix, D: DiagonalMatrix):
    return mx.scale_cols(mx.scale_rows(D.diag, A.entries), D.diag)


def whitened_form(
    A: HankelMatrix,
    B: HankelMatrix,
    D: DiagonalMatrix,
    condition_limit: float = 1e12,
) -> Tuple[np.ndarray, np.ndarray]:
    """
    C = L^-1 DAD L^-T with L the floating Cholesky factor of B.
    Returns (C, L); C is symmetrized to absorb rounding.
    """
    lower = float_cholesky(B, condition_limit=condition_limit)
    dad = mx.to_float(_dad(A, D))
    half = solve_triangular(lower, dad, lower=True)
    c = solve_triangular(lower, half.T, lower=True)
    return 0.5 * (c + c.T), lower


def _exact_whitened_form(A: HankelMatrix, B: HankelMatrix, D: DiagonalMatrix) -> Tuple[np.ndarray, np.ndarray]:
    """
    Whitening through the exact LDL of B: K = L~^-1 DAD L~^-T is formed in
    rationals and only the pivot square roots are taken in floating point.
    Returns (C, M) where a = M x recovers the coefficients.
    """
    factor = ldl_decompose(B, strict=True)
    inverse = unit_lower_inverse(factor.lower)
    k = mx.matmul_chain(inverse, _dad(A, D), mx.transpose(inverse))
    roots = np.sqrt([float(pivot) for pivot in factor.pivots])
    c = mx.to_float(k) / np.outer(roots, roots)
    recover = mx.to_float(inverse).T / roots[np.newaxis, :]
    return 0.5 * (c + c.T), recover


def _normalize(raw: np.ndarray, floor: float) -> Tuple[np.ndarray, float, bool]:
    """
    Fix the sign so the first significant entry is positive, then scale so the
    last entry is 1. Falls back to the largest-magnitude entry when the last
    one is negligible. Returns (a, total factor applied, normalized_by_last).
    """
    peak = float(np.max(np.abs(raw)))
    if peak == 0.0:
        raise DegeneratePolynomialError("Optimal coefficient vector vanished")
    significant = np.flatnonzero(np.abs(raw) > floor * peak)
    sign = 1.0 if raw[significant[0]] > 0 else -1.0
    signed = sign * raw
    if abs(signed[-1]) >= floor * peak:
        return signed / signed[-1], sign / signed[-1], True
    pivot = signed[int(np.argmax(np.abs(signed)))]
    logger.warning(
        f"Last coefficient {signed[-1]:.3e} is negligible; normalizing by the largest entry instead"
    )
    return signed / pivot, sign / pivot, False


def max_gain(
    dist: Union[DistributionSpec, MomentSequence],
    order: int,
    exact_whitening: bool = False,
    condition_limit: float = 1e12,
    eigen_tolerance: float = 1e-12,
    eigen_max_sweeps: int = 64,
    exact_whitening_max_m: int = 8,
    normalization_floor: float = 1e-12,
    gain_tolerance: float = 1e-6,
) -> GainResult:
    """
    Maximize the gain over odd polynomials of order N = 2M - 1.

    dist is either a distribution spec or an already materialized moment
    sequence. B must be strictly positive definite; the check is exact.
    Raises ConditioningError when the exact gain of the recovered
    coefficients drifts from the eigenvalue by more than gain_tolerance
    (relative), which happens once back-substitution loses the eigenvector.
    """
    if order < 1 or order % 2 == 0:
        raise DimensionError(f"Polynomial order N must be odd and positive, got {order}", {"order": order})
    m = (order + 1) // 2
    moments = dist if isinstance(dist, MomentSequence) else even_moments(dist, m)
    A = build_A(moments, m)
    B = build_B(moments, m)
    D = order_diagonal(m)
    logger.info(f"Maximizing gain for N={order} ({moments.source.kind.value}, M={m})")

    ldl_decompose(B, strict=True)

    if exact_whitening:
        if m > exact_whitening_max_m:
            raise DimensionError(
                f"Exact whitening is limited to M <= {exact_whitening_max_m}, got M={m}",
                {"m": m, "limit": exact_whitening_max_m},
            )
        c, recover = _exact_whitened_form(A, B, D)
    else:
        c, lower = whitened_form(A, B, D, condition_limit=condition_limit)
        recover = None

    eigenvalues, vectors = symmetric_eigen(c, tolerance=eigen_tolerance, max_sweeps=eigen_max_sweeps)
    gain = float(eigenvalues[-1])
    x = vectors[:, -1]
    residual = float(np.linalg.norm(c @ x - gain * x))
    multiplicity = int(
        np.sum(np.abs(eigenvalues - gain) <= MULTIPLICITY_TOLERANCE * max(abs(gain), 1.0))
    )
    if multiplicity > 1:
        logger.warning(f"Top eigenvalue {gain:.12g} has multiplicity {multiplicity}; maximizer is not unique")

    if recover is None:
        raw = solve_triangular(lower, x, lower=True, trans="T")
    else:
        raw = recover @ x
    a, factor, normalized_by_last = _normalize(raw, normalization_floor)
    whitened = x if factor > 0 else -x

    a_exact = tuple(Fraction(float(value)).limit_denominator(MAX_DENOMINATOR) for value in a)
    gain_exact = gain_of(a_exact, moments)
    logger.info(f"Maximal gain {gain:.12g} (exact gain of rationalized a: {float(gain_exact):.12g})")
    drift = abs(float(gain_exact) - gain) / (abs(gain) or 1.0)
    if drift > gain_tolerance:
        raise ConditioningError(
            None,
            drift,
            f"Recovered coefficients reach gain {float(gain_exact):.12g} instead of {gain:.12g} at N={order}; "
            f"use exact whitening (raise exact_whitening_max_m to at least {m})",
            {"order": order, "gain": gain, "gain_exact": format_rational(gain_exact)},
        )

    return GainResult(
        gain=gain,
        normalized_gain=float(moments.sigma2) * gain,
        gain_exact=gain_exact,
        a=OddPolynomial(a=a_exact),
        coefficients=tuple(float(value) for value in a),
        eigenvalues=tuple(float(value) for value in eigenvalues),
        whitened_vector=tuple(float(value) for value in whitened),
        residual=residual,
        normalized_by_last=normalized_by_last,
        multiplicity=multiplicity,
        exact_whitening=exact_whitening,
    )


def generalized_eigenvalues_2x2(moments: MomentSequence) -> Tuple[float, float]:
    """
    Roots of det(DAD - lambda B) = 0 at M = 2 from the quadratic formula.
    Serves as an independent check on the whitening path.
    """
    A = build_A(moments, 2).entries
    B = build_B(moments, 2).entries
    d = order_diagonal(2).diag
    P = [[float(d[i] * A[i][j] * d[j]) for j in range(2)] for i in range(2)]
    Q = [[float(B[i][j]) for j in range(2)] for i in range(2)]
    qa = Q[0][0] * Q[1][1] - Q[0][1] * Q[1][0]
    qb = -(P[0][0] * Q[1][1] + P[1][1] * Q[0][0] - P[0][1] * Q[1][0] - P[1][0] * Q[0][1])
    qc = P[0][0] * P[1][1] - P[0][1] * P[1][0]
    root = math.sqrt(qb * qb - 4 * qa * qc)
    return (-qb - root) / (2 * qa), (-qb + root) / (2 * qa)
