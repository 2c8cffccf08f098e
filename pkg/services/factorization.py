"""
Factorization Module

Exact square-root-free LDL factorization of symmetric moment matrices, the
closed-form factors of the Gaussian A and B in terms of the Hermite triangles,
the exact identity checks built on those factors, and the floating Cholesky
path used by the optimizer.
"""

import logging
import math
from fractions import Fraction
from typing import Sequence, Tuple, Union

import numpy as np

from models.domain import Grid, HankelMatrix, LdlFactorization
from models.schemas import IdentityReport
from services.errors import ConditioningError, DimensionError, NotPositiveDefiniteError
from services.exact import matrix as mx
from services.exact.rational import RationalLike, parse_positive_rational
from services.hankel import build_A, build_B, order_diagonal, sigma_diagonal
from services.hermite import build_L_a, build_L_b
from services.moments import gaussian_even_moments

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def _grid(h: Union[HankelMatrix, Grid]) -> Grid:
    return h.entries if isinstance(h, HankelMatrix) else mx.to_grid(h)


def ldl_decompose(h: Union[HankelMatrix, Grid], strict: bool = True) -> LdlFactorization:
    """
    Exact H = L diag(pivots) L^T with unit-lower L.

    strict mode rejects any pivot <= 0. Lenient mode accepts a zero pivot when
    the rest of its column is zero too (the PSD boundary) and reports the rank.
    """
    g = _grid(h)
    n = len(g)
    if any(len(row) != n for row in g):
        raise DimensionError("LDL factorization needs a square matrix", {"rows": n})
    if any(g[i][j] != g[j][i] for i in range(n) for j in range(i)):
        raise DimensionError("LDL factorization needs a symmetric matrix", {"rows": n})

    lower = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    pivots = []
    for j in range(n):
        pivot = g[j][j] - sum((lower[j][k] ** 2 * pivots[k] for k in range(j)), ZERO)
        if pivot < 0 or (pivot == 0 and strict):
            raise NotPositiveDefiniteError(j, pivot)
        pivots.append(pivot)
        for i in range(j + 1, n):
            residual = g[i][j] - sum((lower[i][k] * lower[j][k] * pivots[k] for k in range(j)), ZERO)
            if pivot == 0:
                if residual != 0:
                    raise NotPositiveDefiniteError(j, pivot)
                continue
            lower[i][j] = residual / pivot
    rank = sum(1 for pivot in pivots if pivot > 0)
    if rank < n:
        logger.warning(f"LDL factorization is rank deficient: rank {rank} of {n}")
    return LdlFactorization(
        lower=tuple(tuple(row) for row in lower), pivots=tuple(pivots), rank=rank
    )


def psd_rank(h: Union[HankelMatrix, Grid]) -> int:
    """Rank of a positive semi-definite matrix via the lenient LDL."""
    return ldl_decompose(h, strict=False).rank


def reconstruct(factor: LdlFactorization) -> Grid:
    return mx.matmul(mx.scale_cols(factor.lower, factor.pivots), mx.transpose(factor.lower))


def unit_lower_inverse(t: Grid) -> Grid:
    """Inverse of a unit lower-triangular matrix by forward substitution."""
    g = mx.to_grid(t)
    if not mx.is_unit_lower(g):
        raise DimensionError("unit_lower_inverse needs a unit lower-triangular matrix")
    n = len(g)
    inverse = [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    for col in range(n):
        for i in range(col + 1, n):
            inverse[i][col] = -sum((g[i][k] * inverse[k][col] for k in range(col, i)), ZERO)
    return tuple(tuple(row) for row in inverse)


def _conjugate(d: Sequence[Fraction], t: Grid, d_inverse: Sequence[Fraction]) -> Grid:
    """diag(d) T diag(d_inverse)."""
    return mx.scale_cols(mx.scale_rows(d, t), d_inverse)


def closed_form_factors(m: int, sigma2: RationalLike) -> Tuple[LdlFactorization, LdlFactorization]:
    """
    LDL factors of the Gaussian (A, B) without elimination:
    lower = D_sigma L^-1 D_sigma^-1 with the Hermite triangle L_a or L_b,
    pivots_A[k] = sigma2^(2k) (2k)!, pivots_B[k] = sigma2^(2k+1) (2k+1)!.
    """
    variance = parse_positive_rational(sigma2)
    d_sigma = sigma_diagonal(m, variance)
    d_inv = d_sigma.inverse().diag
    lower_a = _conjugate(d_sigma.diag, unit_lower_inverse(build_L_a(m).rows), d_inv)
    lower_b = _conjugate(d_sigma.diag, unit_lower_inverse(build_L_b(m).rows), d_inv)
    pivots_a = tuple(variance ** (2 * k) * math.factorial(2 * k) for k in range(m))
    pivots_b = tuple(variance ** (2 * k + 1) * math.factorial(2 * k + 1) for k in range(m))
    return (
        LdlFactorization(lower=lower_a, pivots=pivots_a, rank=m),
        LdlFactorization(lower=lower_b, pivots=pivots_b, rank=m),
    )


def _hermite_diagonals(m: int) -> Tuple[Tuple[Fraction, ...], Tuple[Fraction, ...]]:
    """D_a = diag((2k)!) and D_b = diag((2k+1)!)."""
    d_a = tuple(Fraction(math.factorial(2 * k)) for k in range(m))
    d_b = tuple(Fraction(math.factorial(2 * k + 1)) for k in range(m))
    return d_a, d_b


def _congruence(t: Grid, h: Grid) -> Grid:
    """T H T^T."""
    return mx.matmul_chain(t, h, mx.transpose(t))


def check_lemma1(m: int, sigma2: RationalLike) -> IdentityReport:
    """
    L_b D_sigma^-1 B D_sigma^-1 L_b^T = sigma2 D_b and
    L_a D_sigma^-1 A D_sigma^-1 L_a^T = D_a, with D_b = D D_a.
    """
    variance = parse_positive_rational(sigma2)
    moments = gaussian_even_moments(m, variance)
    d_inv = sigma_diagonal(m, variance).inverse().diag
    A = build_A(moments).entries
    B = build_B(moments).entries
    d_a, d_b = _hermite_diagonals(m)
    d = order_diagonal(m).diag

    whitened_b = _congruence(build_L_b(m).rows, mx.scale_cols(mx.scale_rows(d_inv, B), d_inv))
    whitened_a = _congruence(build_L_a(m).rows, mx.scale_cols(mx.scale_rows(d_inv, A), d_inv))
    return mx.combine(
        "lemma1",
        mx.compare("lemma1_B", whitened_b, mx.diagonal([variance * value for value in d_b])),
        mx.compare("lemma1_A", whitened_a, mx.diagonal(d_a)),
        mx.compare("lemma1_Db", mx.diagonal(d_b), mx.diagonal([x * y for x, y in zip(d, d_a)])),
    )


def check_hermite_gram(m: int) -> IdentityReport:
    """Unit-variance Gram identities L_b B0 L_b^T = D_b and L_a A0 L_a^T = D_a."""
    unit = gaussian_even_moments(m, 1)
    d_a, d_b = _hermite_diagonals(m)
    return mx.combine(
        "hermite_gram",
        mx.compare("hermite_gram_B", _congruence(build_L_b(m).rows, build_B(unit).entries), mx.diagonal(d_b)),
        mx.compare("hermite_gram_A", _congruence(build_L_a(m).rows, build_A(unit).entries), mx.diagonal(d_a)),
    )


def verify_theorem1(m: int, sigma2: RationalLike) -> IdentityReport:
    """
    Square-root-free form of L^-1 D A D L^-T = sigma^-2 D:
    L_b (D_sigma^-1 D A D D_sigma^-1) L_b^T = D D_b.
    """
    variance = parse_positive_rational(sigma2)
    moments = gaussian_even_moments(m, variance)
    d = order_diagonal(m).diag
    weights = tuple(dk / sk for dk, sk in zip(d, sigma_diagonal(m, variance).diag))
    inner = mx.scale_cols(mx.scale_rows(weights, build_A(moments).entries), weights)
    lhs = _congruence(build_L_b(m).rows, inner)
    _, d_b = _hermite_diagonals(m)
    return mx.compare("theorem1", lhs, mx.diagonal([x * y for x, y in zip(d, d_b)]))


def check_theorem1_reconstruction(m: int, sigma2: RationalLike) -> IdentityReport:
    """DAD = D_sigma L_b^-1 (D D_b) L_b^-T D_sigma, i.e. DAD = sigma^-2 L D L^T."""
    variance = parse_positive_rational(sigma2)
    moments = gaussian_even_moments(m, variance)
    d = order_diagonal(m).diag
    d_sigma = sigma_diagonal(m, variance).diag
    _, d_b = _hermite_diagonals(m)
    dad = mx.scale_cols(mx.scale_rows(d, build_A(moments).entries), d)
    factor = mx.scale_rows(d_sigma, unit_lower_inverse(build_L_b(m).rows))
    rhs = mx.matmul(mx.scale_cols(factor, [x * y for x, y in zip(d, d_b)]), mx.transpose(factor))
    return mx.compare("theorem1_reconstruction", dad, rhs)


def float_cholesky(h, condition_limit: float = 1e12) -> np.ndarray:
    """
    Floating Cholesky H = L L^T.

    A pivot that is non-positive, or that has lost every significant digit
    to cancellation (pivot <= n * eps * H[j][j]), raises ConditioningError.
    A pivot ratio above condition_limit only logs a warning.
    """
    matrix = mx.to_float(h.entries) if isinstance(h, HankelMatrix) else np.asarray(h, dtype=float)
    n = matrix.shape[0]
    if matrix.shape != (n, n):
        raise DimensionError("Cholesky needs a square matrix", {"rows": n})
    floor = n * np.finfo(float).eps
    lower = np.zeros_like(matrix)
    for j in range(n):
        pivot = matrix[j, j] - np.dot(lower[j, :j], lower[j, :j])
        if not np.isfinite(pivot) or pivot <= floor * abs(matrix[j, j]):
            ratio = float(pivot / matrix[j, j]) if matrix[j, j] else float("nan")
            logger.warning(f"Floating Cholesky breakdown at pivot {j}: {pivot!r}")
            raise ConditioningError(j, ratio)
        lower[j, j] = math.sqrt(pivot)
        if j + 1 < n:
            lower[j + 1:, j] = (matrix[j + 1:, j] - lower[j + 1:, :j] @ lower[j, :j]) / lower[j, j]
    squared = np.diag(lower) ** 2
    ratio = float(squared.max() / squared.min())
    if ratio > condition_limit:
        logger.warning(
            f"Ill-conditioned factorization: pivot ratio {ratio:.3e} exceeds {condition_limit:.1e}; "
            "consider the exact whitening path"
        )
    return lower


def closed_form_cholesky(m: int, sigma2: RationalLike) -> np.ndarray:
    """Floating L = sigma D_sigma L_b^-1 D_b^(1/2), the Cholesky factor of the Gaussian B."""
    _, factor_b = closed_form_factors(m, sigma2)
    roots = np.sqrt([float(p) for p in factor_b.pivots])
    return mx.to_float(factor_b.lower) * roots[np.newaxis, :]
