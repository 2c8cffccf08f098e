"""
Moment Sequence Module

This module produces the even moments mu[k] = E(s^(2k)) of symmetric signal
distributions in exact rational form: Gaussian, uniform, an explicit moment
list, or an empirical sample set. It also reads the moment and sample files
accepted by the command line.
"""

import json
import logging
import math
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterable, List, Sequence

from models.domain import DistributionKind, DistributionSpec, MomentSequence
from models.schemas import MomentFile
from services.errors import DimensionError, EmptyInputError, InvalidDistributionError
from services.exact.rational import RationalLike, parse_positive_rational, parse_rational

logger = logging.getLogger(__name__)


@lru_cache(maxsize=None)
def double_factorial(n: int) -> int:
    """
    n!! = n * (n-2) * ... down to 2 or 1.
    Both 0!! and (-1)!! are the empty product 1.
    """
    if n < -1:
        raise ValueError(f"double factorial undefined for {n}")
    return math.prod(range(n, 0, -2))


def _require_order(m: int) -> None:
    if m < 1:
        raise DimensionError(f"Order M must be at least 1, got {m}", {"m": m})


def gaussian_spec(sigma2: RationalLike) -> DistributionSpec:
    return DistributionSpec(kind=DistributionKind.GAUSSIAN, sigma2=parse_positive_rational(sigma2))


def uniform_spec(sigma2: RationalLike) -> DistributionSpec:
    return DistributionSpec(kind=DistributionKind.UNIFORM, sigma2=parse_positive_rational(sigma2))


def gaussian_even_moments(m: int, sigma2: RationalLike) -> MomentSequence:
    """mu[k] = (2k-1)!! * sigma2^k for k = 0..2M-1."""
    _require_order(m)
    spec = gaussian_spec(sigma2)
    mu = tuple(double_factorial(2 * k - 1) * spec.sigma2 ** k for k in range(2 * m))
    return MomentSequence(mu=mu, source=spec)


def uniform_even_moments(m: int, sigma2: RationalLike) -> MomentSequence:
    """
    Moments of the uniform law on [-sqrt(3 sigma2), sqrt(3 sigma2)].
    mu[k] = (3 sigma2)^k / (2k + 1).
    """
    _require_order(m)
    spec = uniform_spec(sigma2)
    mu = tuple((3 * spec.sigma2) ** k / (2 * k + 1) for k in range(2 * m))
    return MomentSequence(mu=mu, source=spec)


def explicit_even_moments(values: Sequence[RationalLike], m: int) -> MomentSequence:
    """
    Wrap a user-supplied moment list, truncated to the 2M entries order M needs.
    The list must start with mu[0] = 1 and contain no negative entries.
    """
    _require_order(m)
    mu = tuple(parse_rational(value) for value in values)
    if len(mu) < 2 * m:
        raise DimensionError(
            f"Order M={m} needs {2 * m} even moments, got {len(mu)}",
            {"m": m, "available": len(mu)},
        )
    mu = mu[: 2 * m]
    if mu[0] != 1:
        raise InvalidDistributionError(f"mu[0] must equal 1, got {mu[0]}", {"mu0": str(mu[0])})
    negative = [k for k, value in enumerate(mu) if value < 0]
    if negative:
        raise InvalidDistributionError(
            f"Even moments must be non-negative; mu[{negative[0]}] = {mu[negative[0]]}",
            {"index": negative[0]},
        )
    spec = DistributionSpec(kind=DistributionKind.EXPLICIT, moments=mu, sigma2=mu[1])
    return MomentSequence(mu=mu, source=spec)


def empirical_even_moments(samples: Iterable[RationalLike], m: int) -> MomentSequence:
    """
    Sample averages of s^(2k), computed exactly from the decimal samples.
    mu[0] is 1 by construction.
    """
    _require_order(m)
    values: List[Fraction] = [parse_rational(sample) for sample in samples]
    if not values:
        raise EmptyInputError("Empirical sample list is empty")
    count = len(values)
    squares = [value * value for value in values]
    mu = [Fraction(1)]
    powers = [Fraction(1)] * count
    for _ in range(1, 2 * m):
        powers = [p * sq for p, sq in zip(powers, squares)]
        mu.append(sum(powers, Fraction(0)) / count)
    spec = DistributionSpec(
        kind=DistributionKind.EMPIRICAL, samples=tuple(values), sigma2=mu[1]
    )
    logger.info(f"Computed {2 * m} empirical moments from {count} samples")
    return MomentSequence(mu=tuple(mu), source=spec)


def even_moments(spec: DistributionSpec, m: int) -> MomentSequence:
    """Dispatch on the distribution kind."""
    if spec.kind is DistributionKind.GAUSSIAN:
        return gaussian_even_moments(m, spec.sigma2)
    if spec.kind is DistributionKind.UNIFORM:
        return uniform_even_moments(m, spec.sigma2)
    if spec.kind is DistributionKind.EXPLICIT:
        sequence = explicit_even_moments(spec.moments, m)
        return MomentSequence(mu=sequence.mu, source=spec)
    sequence = empirical_even_moments(spec.samples, m)
    return MomentSequence(mu=sequence.mu, source=spec)


def read_moment_file(path: str) -> MomentSequence:
    """
    Load {"m": M, "even_moments": [...]} from disk.
    File and JSON errors propagate unchanged for the caller to report.
    """
    raw = json.loads(Path(path).read_text(encoding="utf-8"))
    document = MomentFile.model_validate(raw)
    sequence = explicit_even_moments(tuple(document.even_moments), document.m)
    spec = sequence.source.model_copy(
        update={"source_path": str(path), "moments": tuple(parse_rational(value) for value in document.even_moments)}
    )
    logger.info(f"Loaded {len(sequence.mu)} even moments (M={document.m}) from {path}")
    return MomentSequence(mu=sequence.mu, source=spec)


def read_sample_file(path: str) -> List[Fraction]:
    """One decimal per line; blank lines are skipped."""
    samples = []
    for number, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), start=1):
        text = line.strip()
        if not text:
            continue
        try:
            samples.append(parse_rational(text))
        except ValueError as e:
            raise ValueError(f"{path}:{number}: {e}") from e
    logger.info(f"Read {len(samples)} samples from {path}")
    return samples
