"""
Optimizer Services Module

Gain evaluation and maximization for odd distortion polynomials: the exact
gain functional, whitening, the Jacobi eigensolver and the Monte Carlo check.
"""

from .eigen import symmetric_eigen
from .gain import gain_of, generalized_eigenvalues_2x2, max_gain, whitened_form
from .monte_carlo import monte_carlo_gain

__all__ = [
    "symmetric_eigen",
    "gain_of",
    "generalized_eigenvalues_2x2",
    "max_gain",
    "whitened_form",
    "monte_carlo_gain",
]
