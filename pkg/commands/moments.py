"""
Moments Command

Dumps an even-moment sequence from a distribution, a moment file or a sample
file, optionally with the PSD witness ranks of A and B.
"""

import argparse
import logging

from commands.common import UsageError, add_distribution_arguments, emit, positive_int, resolve_moments
from models.schemas import MomentPayload
from services.exact.rational import format_rational
from services.factorization import ldl_decompose, psd_rank
from services.hankel import build_A, build_B
from services.moments import empirical_even_moments, read_sample_file
from services.settings import HankelSettings

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("moments", help="Dump an even-moment sequence")
    parser.add_argument("--m", type=positive_int, required=True)
    add_distribution_arguments(parser)
    parser.add_argument("--samples", metavar="FILE", help="one decimal sample per line")
    parser.add_argument("--check-psd", action="store_true", help="report the LDL ranks of A and B")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: HankelSettings) -> int:
    if args.samples and args.moments:
        raise UsageError("--samples and --moments are mutually exclusive")
    if args.samples:
        moments = empirical_even_moments(read_sample_file(args.samples), args.m)
    else:
        moments = resolve_moments(args, args.m)

    rank_a = rank_b = None
    if args.check_psd:
        A, B = build_A(moments, args.m), build_B(moments, args.m)
        if settings.strict_psd:
            rank_a = ldl_decompose(A, strict=True).rank
            rank_b = ldl_decompose(B, strict=True).rank
        else:
            rank_a, rank_b = psd_rank(A), psd_rank(B)
        logger.info(f"PSD witness ranks: A {rank_a}/{args.m}, B {rank_b}/{args.m}")

    emit(
        MomentPayload(
            m=args.m,
            kind=moments.source.kind.value,
            even_moments=[format_rational(value) for value in moments.mu],
            psd_rank_a=rank_a,
            psd_rank_b=rank_b,
        ),
        args.format,
    )
    return 0
