"""
Monte Carlo Gain Module

Stochastic estimate of the gain E[f'(s)^2] / E[f(s)^2] under a zero-mean
Gaussian signal. Draws come from numpy's PCG64 bit generator through the
ziggurat standard-normal sampler, so a fixed seed reproduces the estimate
bit for bit.

Samples are drawn from the widened proposal N(0, proposal_scale * sigma2) and
weighted by the density ratio p(s) / q(s). The high-order terms of f
dominate both moments, and the wider proposal samples the tails that carry
them. proposal_scale = 1 reduces to the plain sample-mean ratio.
"""

import logging
import math
from typing import Sequence, Tuple, Union

import numpy as np

from models.domain import OddPolynomial
from services.errors import DegeneratePolynomialError, DimensionError, InvalidDistributionError
from services.exact.rational import RationalLike, parse_positive_rational
from services.hermite import eval_odd_poly, eval_odd_poly_derivative

logger = logging.getLogger(__name__)

# Below one half the weights p/q have infinite variance.
MIN_PROPOSAL_SCALE = 0.5


def monte_carlo_gain(
    a: Union[OddPolynomial, Sequence],
    sigma2: RationalLike,
    n_samples: int,
    seed: int,
    proposal_scale: float = 3.0,
) -> Tuple[float, float]:
    """
    Returns (estimate, standard_error). The standard error is the
    delta-method error of the ratio of the two weighted means.
    """
    if n_samples < 2:
        raise DimensionError(f"Monte Carlo needs at least 2 samples, got {n_samples}", {"samples": n_samples})
    if proposal_scale <= MIN_PROPOSAL_SCALE:
        raise InvalidDistributionError(
            f"proposal_scale must exceed {MIN_PROPOSAL_SCALE}, got {proposal_scale}",
            {"proposal_scale": proposal_scale},
        )
    variance = float(parse_positive_rational(sigma2))
    generator = np.random.Generator(np.random.PCG64(seed))
    s = generator.standard_normal(n_samples) * math.sqrt(proposal_scale * variance)

    if proposal_scale == 1.0:
        weights = np.ones(n_samples)
    else:
        weights = math.sqrt(proposal_scale) * np.exp(
            -0.5 * s * s * (1.0 - 1.0 / proposal_scale) / variance
        )

    numerator = weights * eval_odd_poly_derivative(a, s) ** 2
    denominator = weights * eval_odd_poly(a, s) ** 2
    mean_numerator = float(np.mean(numerator))
    mean_denominator = float(np.mean(denominator))
    if mean_denominator == 0.0:
        raise DegeneratePolynomialError("Monte Carlo denominator vanished; the polynomial is identically zero")

    estimate = mean_numerator / mean_denominator
    linearized = numerator - estimate * denominator
    standard_error = float(np.std(linearized, ddof=1)) / math.sqrt(n_samples) / mean_denominator
    logger.info(
        f"Monte Carlo gain {estimate:.6f} +/- {standard_error:.2e} "
        f"({n_samples} samples, seed {seed}, proposal scale {proposal_scale})"
    )
    return estimate, standard_error
