"""
Hankel Moment Matrix Module

This module builds the moment matrices A (shift 0) and B (shift 1), the order
diagonal D = diag(1, 3, ..., 2M-1) and the variance diagonal
D_sigma = diag(1, sigma2, ..., sigma2^(M-1)), and checks the exact identities
that tie them together: the variance scaling split, the Gaussian recurrence
AD + DA = A + sigma^-2 B, and the determinant products.
"""

import logging
import math
from fractions import Fraction
from typing import Optional, Sequence, Union

from models.domain import DiagonalMatrix, Grid, HankelMatrix, MomentSequence
from models.schemas import IdentityReport
from services.errors import DimensionError
from services.exact import matrix as mx
from services.exact.rational import RationalLike, parse_positive_rational
from services.moments import gaussian_even_moments

logger = logging.getLogger(__name__)


def _build(moments: MomentSequence, m: Optional[int], shift: int) -> HankelMatrix:
    order = moments.m if m is None else m
    if order < 1:
        raise DimensionError(f"Order M must be at least 1, got {order}", {"m": order})
    needed = 2 * order - 1 + shift
    if len(moments.mu) < needed:
        raise DimensionError(
            f"Hankel matrix of order {order} (shift {shift}) needs {needed} moments, got {len(moments.mu)}",
            {"m": order, "shift": shift, "available": len(moments.mu)},
        )
    mu = moments.mu
    entries = tuple(tuple(mu[i + j + shift] for j in range(order)) for i in range(order))
    return HankelMatrix(m=order, entries=entries, shift=shift)


def build_A(moments: MomentSequence, m: Optional[int] = None) -> HankelMatrix:
    """A[i][j] = E(s^(2(i+j))); defaults to the order the sequence was built for."""
    return _build(moments, m, 0)


def build_B(moments: MomentSequence, m: Optional[int] = None) -> HankelMatrix:
    """B[i][j] = E(s^(2(i+j+1))), i.e. A shifted by one anti-diagonal."""
    return _build(moments, m, 1)


def order_diagonal(m: int) -> DiagonalMatrix:
    if m < 1:
        raise DimensionError(f"Order M must be at least 1, got {m}", {"m": m})
    return DiagonalMatrix(diag=tuple(Fraction(2 * k + 1) for k in range(m)))


def sigma_diagonal(m: int, sigma2: RationalLike) -> DiagonalMatrix:
    if m < 1:
        raise DimensionError(f"Order M must be at least 1, got {m}", {"m": m})
    variance = parse_positive_rational(sigma2)
    return DiagonalMatrix(diag=tuple(variance ** k for k in range(m)))


def _entries(h: Union[HankelMatrix, Grid]) -> Grid:
    return h.entries if isinstance(h, HankelMatrix) else h


def check_scaling_split(A: HankelMatrix, B: HankelMatrix, sigma2: RationalLike) -> IdentityReport:
    """
    A = D_sigma A0 D_sigma and B = sigma2 D_sigma B0 D_sigma, with A0, B0
    rebuilt from the unit-variance Gaussian.
    """
    variance = parse_positive_rational(sigma2)
    m = A.m
    unit = gaussian_even_moments(m, 1)
    A0 = build_A(unit).entries
    B0 = build_B(unit).entries
    d_sigma = sigma_diagonal(m, variance).diag
    scaled_A = mx.scale_cols(mx.scale_rows(d_sigma, A0), d_sigma)
    scaled_B = mx.scale(mx.scale_cols(mx.scale_rows(d_sigma, B0), d_sigma), variance)
    return mx.combine(
        "scaling_split",
        mx.compare("scaling_split_A", A.entries, scaled_A),
        mx.compare("scaling_split_B", B.entries, scaled_B),
    )


def check_recurrence(A: HankelMatrix, B: HankelMatrix, sigma2: RationalLike) -> IdentityReport:
    """AD + DA = A + sigma^-2 B; holds for Gaussian moments only."""
    variance = parse_positive_rational(sigma2)
    d = order_diagonal(A.m).diag
    lhs = mx.add(mx.scale_cols(A.entries, d), mx.scale_rows(d, A.entries))
    rhs = mx.add(A.entries, mx.scale(B.entries, 1 / variance))
    return mx.compare("recurrence", lhs, rhs)


def check_recurrence_alternate(A: HankelMatrix, B: HankelMatrix, sigma2: RationalLike) -> IdentityReport:
    """Equivalent form sigma^-2 B = DAD - (D - I) A (D - I)."""
    variance = parse_positive_rational(sigma2)
    d = order_diagonal(A.m).diag
    d_minus_one = tuple(value - 1 for value in d)
    dad = mx.scale_cols(mx.scale_rows(d, A.entries), d)
    shifted = mx.scale_cols(mx.scale_rows(d_minus_one, A.entries), d_minus_one)
    return mx.compare(
        "recurrence_alternate", mx.scale(B.entries, 1 / variance), mx.subtract(dad, shifted)
    )


def check_recurrence_quadratic(a: Sequence[Fraction], moments: MomentSequence) -> IdentityReport:
    """
    Quadratic-form version of the recurrence for one coefficient vector:
    a D A D a^T = -a A (D - I) D a^T + sigma^-2 a B D a^T.
    """
    m = len(a)
    A = build_A(moments, m).entries
    B = build_B(moments, m).entries
    d = order_diagonal(m).diag
    variance = moments.sigma2
    row = [Fraction(value) for value in a]

    def form(left: Sequence[Fraction], g: Grid, right: Sequence[Fraction]) -> Fraction:
        return sum(
            (left[i] * g[i][j] * right[j] for i in range(m) for j in range(m)), Fraction(0)
        )

    ad = [row[k] * d[k] for k in range(m)]
    add_minus = [row[k] * (d[k] - 1) * d[k] for k in range(m)]
    lhs = form(ad, A, ad)
    rhs = -form(row, A, add_minus) + form(row, B, ad) / variance
    return mx.compare_scalar("recurrence_quadratic", "aDADa^T", lhs, rhs)


def determinant(h: Union[HankelMatrix, Grid]) -> Fraction:
    """
    Exact determinant by fraction-free (Bareiss) elimination.
    Rational input is cleared to integers first so every division is exact.
    """
    g = _entries(h)
    n = len(g)
    if n == 0:
        return Fraction(1)
    if any(len(row) != n for row in g):
        raise DimensionError("determinant needs a square matrix", {"rows": n})
    common = math.lcm(*(Fraction(value).denominator for row in g for value in row))
    work = [[int(Fraction(value) * common) for value in row] for row in g]
    sign = 1
    previous = 1
    for k in range(n - 1):
        if work[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if work[i][k] != 0), None)
            if swap is None:
                return Fraction(0)
            work[k], work[swap] = work[swap], work[k]
            sign = -sign
        pivot = work[k][k]
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                work[i][j] = (pivot * work[i][j] - work[i][k] * work[k][j]) // previous
            work[i][k] = 0
        previous = pivot
    return Fraction(sign * work[n - 1][n - 1], common ** n)


def check_determinant_products(m: int, sigma2: RationalLike) -> IdentityReport:
    """
    Closed-form determinants of the Gaussian A and B against elimination:
    det B = sigma2^(M^2) prod (2k+1)!, det A = sigma2^(M(M-1)) prod (2k)!,
    det B / det A = sigma2^M det D.
    """
    variance = parse_positive_rational(sigma2)
    moments = gaussian_even_moments(m, variance)
    det_a = determinant(build_A(moments))
    det_b = determinant(build_B(moments))
    expected_b = variance ** (m * m) * math.prod(math.factorial(2 * k + 1) for k in range(m))
    expected_a = variance ** (m * (m - 1)) * math.prod(math.factorial(2 * k) for k in range(m))
    det_d = math.prod(2 * k + 1 for k in range(m))
    return mx.combine(
        "determinant_products",
        mx.compare_scalar("determinant_products", "det B", det_b, expected_b),
        mx.compare_scalar("determinant_products", "det A", det_a, expected_a),
        mx.compare_scalar("determinant_products", "det B / det A", det_b / det_a, variance ** m * det_d),
    )
