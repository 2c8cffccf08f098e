"""
Hermite Command

Prints the packed and dense coefficients of a probabilists' Hermite polynomial.
"""

import argparse

from commands.common import emit, positive_int
from models.schemas import HermitePayload
from services.exact.rational import format_rational
from services.hermite import hermite_coefficients, hermite_dense
from services.settings import HankelSettings


def _degree(text: str) -> int:
    value = int(text)
    if value < 0:
        raise argparse.ArgumentTypeError(f"degree must be non-negative, got {value}")
    return value


def register(subparsers) -> None:
    parser = subparsers.add_parser("hermite", help="Hermite polynomial coefficients")
    parser.add_argument("--n", type=_degree, required=True)
    parser.add_argument("--m", type=positive_int, default=None, help="pad the packed vector to length M")
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: HankelSettings) -> int:
    m = args.m or args.n // 2 + 1
    packed = hermite_coefficients(args.n, m)
    emit(
        HermitePayload(
            n=args.n,
            packed=[format_rational(value) for value in packed.beta],
            dense=[format_rational(value) for value in hermite_dense(args.n)],
        ),
        args.format,
    )
    return 0
