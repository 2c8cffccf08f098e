"""
Command Line Application

This module is the entry point of the hankel-moments tool. It wires the
command modules into one argument parser, loads settings and maps every
outcome onto the exit-code contract: 0 success, 1 domain error or failed
verification, 2 usage, file or parse error.
"""

import argparse
import json
import logging
import sys
from typing import List, Optional

from dotenv import load_dotenv
from pydantic import ValidationError

from commands import factor, hermite, moments, optimize, verify
from commands.common import UsageError
from models.schemas import ErrorPayload
from services.errors import HankelError
from services.settings import get_settings

# Load environment variables from .env file
load_dotenv()

# Configure logging; stdout is reserved for JSON
logging.basicConfig(
    level=logging.INFO,
    format='%(asctime)s - %(levelname)s - %(message)s',
    stream=sys.stderr
)
logger = logging.getLogger(__name__)

COMMANDS = (verify, optimize, factor, hermite, moments)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="hankel-moments",
        description="Exact Hankel moment identities and the odd-polynomial gain optimizer",
    )
    parser.add_argument("--format", choices=["json", "table"], default="json")
    parser.add_argument("--seed", type=int, default=None, help="Monte Carlo seed")
    parser.add_argument("--strict-psd", action="store_true", default=None, help="reject zero LDL pivots")
    parser.add_argument("--config", metavar="PATH", default=None, help="TOML settings file")
    parser.add_argument("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR")
    subparsers = parser.add_subparsers(dest="command", required=True)
    for module in COMMANDS:
        module.register(subparsers)
    return parser


def _usage_failure(message: str) -> int:
    sys.stderr.write(f"hankel-moments: error: {message}\n")
    return 2


def main(argv: Optional[List[str]] = None) -> int:
    """
    Parse flags, run the selected command and return its exit code.
    argparse itself exits with code 2 on malformed flags.
    """
    args = build_parser().parse_args(argv)
    overrides = {
        key: value
        for key, value in (("seed", args.seed), ("strict_psd", args.strict_psd), ("log_level", args.log_level))
        if value is not None
    }
    try:
        settings = get_settings(args.config, force_reload=True)
        if overrides:
            settings = type(settings)(**{**settings.model_dump(), **overrides})
    except (FileNotFoundError, ValidationError, ValueError) as e:
        return _usage_failure(f"invalid configuration: {e}")
    logging.getLogger().setLevel(settings.log_level.upper())

    try:
        logger.info(f"Running command '{args.command}'")
        return args.handler(args, settings)
    except HankelError as e:
        logger.error(f"Command '{args.command}' failed: {e.message}", exc_info=True)
        payload = ErrorPayload(**e.to_payload())
        sys.stdout.write(payload.model_dump_json(indent=2) + "\n")
        return 1
    except UsageError as e:
        return _usage_failure(str(e))
    except (FileNotFoundError, IsADirectoryError, PermissionError) as e:
        return _usage_failure(f"cannot read input: {e}")
    except (json.JSONDecodeError, ValidationError, ValueError) as e:
        return _usage_failure(f"cannot parse input: {e}")


if __name__ == "__main__":
    sys.exit(main())
