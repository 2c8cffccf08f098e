"""
Hermite Polynomial Module

Probabilists' Hermite polynomials as exact coefficient vectors, the packed
triangular matrices L_a (even degrees) and L_b (odd degrees), the exact
orthogonality and derivative identities, and numeric evaluation of odd
distortion polynomials and their derivatives.
"""

import logging
import math
from fractions import Fraction
from functools import lru_cache
from typing import Sequence, Tuple, Union

import numpy as np

from models.domain import HermiteCoefficients, HermiteTriangular, OddPolynomial
from models.schemas import IdentityReport
from services.errors import DimensionError
from services.exact import matrix as mx
from services.hankel import order_diagonal
from services.moments import double_factorial

logger = logging.getLogger(__name__)

ArrayLike = Union[float, np.ndarray]


@lru_cache(maxsize=None)
def hermite_dense(n: int) -> Tuple[Fraction, ...]:
    """
    Dense coefficients (constant term first) of H_n, length n + 1.
    Built with H_{n+1}(s) = s H_n(s) - n H_{n-1}(s) from H_0 = 1, H_1 = s.
    """
    if n < 0:
        raise ValueError(f"Hermite degree must be non-negative, got {n}")
    if n == 0:
        return (Fraction(1),)
    if n == 1:
        return (Fraction(0), Fraction(1))
    previous, current = hermite_dense(n - 2), hermite_dense(n - 1)
    k = n - 1
    result = [Fraction(0)] + list(current)
    for i, value in enumerate(previous):
        result[i] -= k * value
    return tuple(result)


def hermite_coefficients(n: int, m: int) -> HermiteCoefficients:
    """Packed coefficients of H_n padded with zeros to length M."""
    needed = n // 2 + 1
    if m < needed:
        raise DimensionError(
            f"Packed length {m} too short for H_{n}; need at least {needed}",
            {"n": n, "m": m},
        )
    dense = hermite_dense(n)
    packed = list(dense[n % 2::2])
    packed.extend([Fraction(0)] * (m - len(packed)))
    return HermiteCoefficients(n=n, beta=tuple(packed))


def _triangular(m: int, parity: str) -> HermiteTriangular:
    if m < 1:
        raise DimensionError(f"Order M must be at least 1, got {m}", {"m": m})
    offset = 1 if parity == "odd" else 0
    rows = tuple(hermite_coefficients(2 * k + offset, m).beta for k in range(m))
    return HermiteTriangular(m=m, rows=rows, parity=parity)


def build_L_b(m: int) -> HermiteTriangular:
    """Rows beta_1, beta_3, ..., beta_N."""
    return _triangular(m, "odd")


def build_L_a(m: int) -> HermiteTriangular:
    """Rows beta_0, beta_2, ..., beta_(N-1)."""
    return _triangular(m, "even")


def check_commute(m: int) -> IdentityReport:
    """L_b D = D L_a, the packed form of H_n' = n H_(n-1)."""
    d = order_diagonal(m).diag
    lhs = mx.scale_cols(build_L_b(m).rows, d)
    rhs = mx.scale_rows(d, build_L_a(m).rows)
    return mx.compare("commute", lhs, rhs)


def check_derivative_identity(n_max: int) -> IdentityReport:
    """Coefficientwise H_n' = n H_(n-1) for 1 <= n <= n_max."""
    for n in range(1, n_max + 1):
        dense = hermite_dense(n)
        derivative = tuple(k * dense[k] for k in range(1, n + 1))
        expected = tuple(n * value for value in hermite_dense(n - 1))
        report = mx.compare("derivative_identity", (derivative,), (expected,))
        if not report.holds:
            report.first_mismatch.row = n
            return report
    return IdentityReport(name="derivative_identity", holds=True)


def _gaussian_moment(k: int) -> int:
    """E(s^k) for the unit Gaussian."""
    return 0 if k % 2 else double_factorial(k - 1)


def orthogonality_integral(n: int, m: int) -> Fraction:
    """
    Exact integral of H_n H_m against the unit Gaussian density, by
    contracting the coefficient product with the Gaussian moments.
    """
    left, right = hermite_dense(n), hermite_dense(m)
    total = Fraction(0)
    for i, c in enumerate(left):
        if c == 0:
            continue
        for j, e in enumerate(right):
            if e:
                total += c * e * _gaussian_moment(i + j)
    return total


def orthogonality_table(n_max: int) -> IdentityReport:
    """Every integral for 0 <= n, m <= n_max equals n! [n = m]."""
    size = n_max + 1
    lhs = tuple(tuple(orthogonality_integral(n, m) for m in range(size)) for n in range(size))
    rhs = tuple(
        tuple(Fraction(math.factorial(n)) if n == m else Fraction(0) for m in range(size))
        for n in range(size)
    )
    return mx.compare("orthogonality", lhs, rhs)


def _coefficients(a: Union[OddPolynomial, Sequence[float]]) -> np.ndarray:
    values = a.a if isinstance(a, OddPolynomial) else a
    return np.array([float(value) for value in values], dtype=float)


def eval_odd_poly(a: Union[OddPolynomial, Sequence[float]], s: ArrayLike) -> ArrayLike:
    """f(s) = s * a z^T with z = (1, s^2, ..., s^(N-1)); Horner in s^2."""
    coeffs = _coefficients(a)
    x = np.asarray(s, dtype=float)
    t = x * x
    acc = np.zeros_like(t)
    for value in coeffs[::-1]:
        acc = acc * t + value
    result = x * acc
    return float(result) if np.ndim(result) == 0 else result


def eval_odd_poly_derivative(a: Union[OddPolynomial, Sequence[float]], s: ArrayLike) -> ArrayLike:
    """f'(s) = a D z^T."""
    coeffs = _coefficients(a)
    weighted = coeffs * (2 * np.arange(len(coeffs)) + 1)
    x = np.asarray(s, dtype=float)
    t = x * x
    acc = np.zeros_like(t)
    for value in weighted[::-1]:
        acc = acc * t + value
    return float(acc) if np.ndim(acc) == 0 else acc
