"""
Factor Command

Prints the exact LDL factorization of A or B, either by elimination or from
the closed-form Gaussian factors.
"""

import argparse
import logging

from commands.common import UsageError, add_distribution_arguments, emit, positive_int, resolve_moments
from models.schemas import FactorPayload
from services.exact.matrix import to_strings
from services.exact.rational import format_rational
from services.factorization import closed_form_factors, ldl_decompose
from services.hankel import build_A, build_B
from services.settings import HankelSettings

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("factor", help="LDL factorization of a moment matrix")
    parser.add_argument("--matrix", choices=["A", "B"], required=True)
    parser.add_argument("--m", type=positive_int, required=True)
    add_distribution_arguments(parser)
    parser.add_argument("--closed-form", action="store_true", help="use the Gaussian closed-form factors")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: HankelSettings) -> int:
    if args.closed_form:
        if args.moments or args.dist != "gaussian":
            raise UsageError("--closed-form applies to the Gaussian distribution only")
        factor_a, factor_b = closed_form_factors(args.m, args.sigma2)
        factor = factor_a if args.matrix == "A" else factor_b
        source = "closed-form"
    else:
        moments = resolve_moments(args, args.m)
        matrix = build_A(moments, args.m) if args.matrix == "A" else build_B(moments, args.m)
        factor = ldl_decompose(matrix, strict=settings.strict_psd)
        source = "elimination"
    logger.info(f"Factored {args.matrix} at M={args.m} ({source})")
    emit(
        FactorPayload(
            lower=to_strings(factor.lower),
            pivots=[format_rational(pivot) for pivot in factor.pivots],
            source=source,
        ),
        args.format,
    )
    return 0
