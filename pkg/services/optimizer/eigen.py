"""
Symmetric Eigensolver Module

Cyclic Jacobi rotations for the small dense symmetric matrices produced by
whitening. Every sweep annihilates each off-diagonal pair once; iteration
stops when the off-diagonal Frobenius norm falls below the tolerance
relative to the norm of the input.
"""

import logging
import math
from typing import Tuple

import numpy as np

from services.errors import DimensionError, IterationLimitError

logger = logging.getLogger(__name__)


def _off_norm(a: np.ndarray) -> float:
    return float(np.linalg.norm(a - np.diag(np.diag(a))))


def _rotation(a: np.ndarray, p: int, q: int) -> Tuple[float, float]:
    """Cosine and sine of the rotation that zeroes a[p, q]."""
    diff = a[q, q] - a[p, p]
    if abs(a[p, q]) < abs(diff) * 1.0e-36:
        t = a[p, q] / diff
    else:
        theta = diff / (2.0 * a[p, q])
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c


def symmetric_eigen(
    c: np.ndarray, tolerance: float = 1e-12, max_sweeps: int = 64
) -> Tuple[np.ndarray, np.ndarray]:
    """
    Eigenvalues in ascending order and the matching orthonormal eigenvectors
    as columns. Raises IterationLimitError when max_sweeps is exhausted.
    """
    a = np.array(c, dtype=float)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise DimensionError("Eigensolver needs a square matrix", {"shape": str(a.shape)})
    n = a.shape[0]
    scale = float(np.linalg.norm(a))
    if not np.allclose(a, a.T, rtol=1e-10, atol=1e-12 * max(scale, 1.0)):
        raise DimensionError("Eigensolver needs a symmetric matrix")
    a = 0.5 * (a + a.T)
    v = np.eye(n)

    target = tolerance * scale
    sweeps = 0
    off = _off_norm(a)
    while off > target:
        if sweeps >= max_sweeps:
            logger.warning(f"Jacobi iteration stopped after {sweeps} sweeps, off-diagonal norm {off:.3e}")
            raise IterationLimitError(sweeps, off)
        for p in range(n - 1):
            for q in range(p + 1, n):
                if a[p, q] == 0.0:
                    continue
                cos, sin = _rotation(a, p, q)
                col_p, col_q = a[:, p].copy(), a[:, q].copy()
                a[:, p] = cos * col_p - sin * col_q
                a[:, q] = sin * col_p + cos * col_q
                row_p, row_q = a[p, :].copy(), a[q, :].copy()
                a[p, :] = cos * row_p - sin * row_q
                a[q, :] = sin * row_p + cos * row_q
                a[p, q] = a[q, p] = 0.0
                vec_p, vec_q = v[:, p].copy(), v[:, q].copy()
                v[:, p] = cos * vec_p - sin * vec_q
                v[:, q] = sin * vec_p + cos * vec_q
        sweeps += 1
        off = _off_norm(a)

    logger.debug(f"Jacobi converged in {sweeps} sweeps (n={n}, off-diagonal {off:.3e})")
    eigenvalues = np.diag(a).copy()
    order = np.argsort(eigenvalues, kind="stable")
    return eigenvalues[order], v[:, order]
