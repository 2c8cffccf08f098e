"""
Verify Command

Runs the exact identity suite over the (M, sigma^2) grid and prints the
verify report. Exit code 0 iff every check passed.
"""

import argparse
import logging

from commands.common import emit, positive_int, rational_list
from services.settings import HankelSettings
from services.verification import cmd_verify

logger = logging.getLogger(__name__)


def register(subparsers) -> None:
    parser = subparsers.add_parser("verify", help="Run the exact identity suite")
    parser.add_argument("--m-max", type=positive_int, default=None, help="largest order M (default from settings)")
    parser.add_argument(
        "--sigma2", type=rational_list, default=None, help="comma-separated variances, e.g. 1,4,1/4"
    )
    parser.add_argument("--workers", type=positive_int, default=None)
    parser.set_defaults(handler=run)


def run(args: argparse.Namespace, settings: HankelSettings) -> int:
    m_max = args.m_max or settings.verify_m_max
    variances = args.sigma2 or settings.sigma2_grid
    workers = args.workers or settings.verify_workers
    report = cmd_verify(m_max, variances, workers=workers)
    emit(report, args.format)
    if report.overall != "pass":
        logger.error(f"Verification failed for M <= {m_max}")
        return 1
    return 0
