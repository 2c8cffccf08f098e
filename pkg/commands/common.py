"""
Command Helpers

Shared argument types, distribution selection and output rendering for the
command modules. Standard output carries the JSON (or table) document only;
human-readable diagnostics go to standard error through logging.
"""

import argparse
import logging
import sys
from typing import Any, List, Optional, TextIO

from pydantic import BaseModel

from models.domain import MomentSequence
from services.exact.rational import parse_positive_rational, parse_rational
from services.moments import even_moments, gaussian_spec, read_moment_file, uniform_spec

logger = logging.getLogger(__name__)


class UsageError(Exception):
    """Malformed flag combination; reported with exit code 2."""


def positive_rational(text: str):
    """argparse type for sigma^2 values: a positive "p/q" or decimal."""
    try:
        return parse_positive_rational(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def rational_list(text: str):
    """argparse type for a comma-separated list of positive rationals."""
    items = [item.strip() for item in text.split(",") if item.strip()]
    if not items:
        raise argparse.ArgumentTypeError("expected at least one value")
    return [positive_rational(item) for item in items]


def positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be at least 1, got {value}")
    return value


def add_distribution_arguments(parser: argparse.ArgumentParser, with_moments_file: bool = True) -> None:
    parser.add_argument("--dist", choices=["gaussian", "uniform"], default="gaussian")
    parser.add_argument("--sigma2", type=positive_rational, default=parse_rational(1))
    if with_moments_file:
        parser.add_argument("--moments", metavar="FILE", help="JSON moment file; overrides --dist")


def resolve_moments(args: argparse.Namespace, m: int) -> MomentSequence:
    """Moments of order m from --moments FILE or from --dist/--sigma2."""
    path = getattr(args, "moments", None)
    if path:
        loaded = read_moment_file(path)
        return even_moments(loaded.source, m)
    spec = gaussian_spec(args.sigma2) if args.dist == "gaussian" else uniform_spec(args.sigma2)
    return even_moments(spec, m)


def _cell(value: Any) -> str:
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, list):
        return "[" + ", ".join(_cell(item) for item in value) + "]"
    if value is None:
        return "-"
    if isinstance(value, dict):
        return ", ".join(f"{key}={_cell(item)}" for key, item in value.items())
    return str(value)


def _format_rows(rows: List[List[str]]) -> str:
    widths = [max(len(row[i]) for row in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(cell.ljust(width) for cell, width in zip(row, widths)).rstrip() for row in rows)


def render_table(payload: BaseModel) -> str:
    """
    Plain-text rendering. A list of records becomes a table with one row per
    record; scalars and matrices become key/value lines.
    """
    data = payload.model_dump(mode="json")
    lines = []
    for key, value in data.items():
        if isinstance(value, list) and value and isinstance(value[0], dict):
            header = list(value[0].keys())
            rows = [header] + [[_cell(record.get(column)) for column in header] for record in value]
            lines.append(f"{key}:")
            lines.append(_format_rows(rows))
        elif isinstance(value, list) and value and isinstance(value[0], list):
            lines.append(f"{key}:")
            lines.append(_format_rows([[_cell(item) for item in row] for row in value]))
        else:
            lines.append(f"{key}: {_cell(value)}")
    return "\n".join(lines)


def emit(payload: BaseModel, fmt: str = "json", stream: Optional[TextIO] = None) -> None:
    out = stream or sys.stdout
    if fmt == "table":
        out.write(render_table(payload) + "\n")
    else:
        out.write(payload.model_dump_json(indent=2) + "\n")
    out.flush()
