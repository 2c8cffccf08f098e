"""
Optimize and Gain Commands

Front ends to the gain optimizer: `optimize` maximizes the gain for a given
order, `gain` evaluates it for a coefficient file, exactly and optionally by
Monte Carlo.
"""

import argparse
import json
import logging
from pathlib import Path

from commands.common import UsageError, add_distribution_arguments, emit, positive_int, resolve_moments
from models.schemas import CoefficientFile, GainPayload, MonteCarloPayload, OptimizePayload
from services.exact.rational import format_rational, parse_rational
from services.moments import read_moment_file
from services.optimizer import gain_of, max_gain, monte_carlo_gain
from services.settings import HankelSettings

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    optimize = subparsers.add_parser("optimize", help="Maximize the receiving gain")
    add_distribution_arguments(optimize)
    optimize.add_argument("--order", type=positive_int, default=None, help="odd polynomial order N")
    optimize.add_argument("--exact-whitening", action="store_true", help="whiten through the exact LDL of B")
    optimize.set_defaults(handler=run_optimize)

    gain = subparsers.add_parser("gain", help="Gain of a given odd polynomial")
    gain.add_argument("--coeffs", metavar="FILE", required=True, help='JSON file {"a": [...]}')
    add_distribution_arguments(gain)
    gain.add_argument(
        "--monte-carlo", type=positive_int, nargs="?", const=0, default=None, metavar="SAMPLES",
        help="Monte Carlo cross-check; SAMPLES defaults to the configured count",
    )
    gain.add_argument("--proposal-scale", type=float, default=None)
    gain.set_defaults(handler=run_gain)


def run_optimize(args: argparse.Namespace, settings: HankelSettings) -> int:
    order = args.order
    if order is None:
        if not args.moments:
            raise UsageError("--order is required unless --moments is given")
        order = 2 * read_moment_file(args.moments).m - 1
    if order % 2 == 0:
        raise UsageError(f"--order must be odd, got {order}")

    moments = resolve_moments(args, (order + 1) // 2)
    result = max_gain(
        moments,
        order,
        exact_whitening=args.exact_whitening,
        condition_limit=settings.condition_limit,
        eigen_tolerance=settings.eigen_tolerance,
        eigen_max_sweeps=settings.eigen_max_sweeps,
        exact_whitening_max_m=settings.exact_whitening_max_m,
        normalization_floor=settings.normalization_floor,
        gain_tolerance=settings.gain_tolerance,
    )
    emit(
        OptimizePayload(
            gain=result.gain,
            gain_exact=format_rational(result.gain_exact),
            normalized_gain=result.normalized_gain,
            a=list(result.coefficients),
            a_exact=[format_rational(value) for value in result.a.a],
            eigenvalues=list(result.eigenvalues),
            whitened_vector=list(result.whitened_vector),
            residual=result.residual,
            multiplicity=result.multiplicity,
            normalized_by_last=result.normalized_by_last,
            exact_whitening=result.exact_whitening,
        ),
        args.format,
    )
    return 0


def run_gain(args: argparse.Namespace, settings: HankelSettings) -> int:
    document = CoefficientFile.model_validate(json.loads(Path(args.coeffs).read_text(encoding="utf-8")))
    coefficients = [parse_rational(value) for value in document.a]
    moments = resolve_moments(args, len(coefficients))
    exact = gain_of(coefficients, moments)

    monte_carlo = None
    if args.monte_carlo is not None:
        if args.moments or args.dist != "gaussian":
            raise UsageError("--monte-carlo samples a Gaussian signal; use --dist gaussian")
        samples = args.monte_carlo or settings.monte_carlo_samples
        scale = settings.monte_carlo_proposal_scale if args.proposal_scale is None else args.proposal_scale
        estimate, standard_error = monte_carlo_gain(
            coefficients, args.sigma2, samples, settings.seed, proposal_scale=scale
        )
        monte_carlo = MonteCarloPayload(
            estimate=estimate,
            standard_error=standard_error,
            samples=samples,
            seed=settings.seed,
            proposal_scale=scale,
        )

    emit(
        GainPayload(
            a=[format_rational(value) for value in coefficients],
            gain=float(exact),
            gain_exact=format_rational(exact),
            monte_carlo=monte_carlo,
        ),
        args.format,
    )
    return 0
