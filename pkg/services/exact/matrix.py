"""
Exact Matrix Module

Dense matrix helpers over fractions.Fraction. Matrices are tuples of row
tuples (the Grid alias) so results stay hashable and immutable.
"""

import logging
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import numpy as np

from models.domain import Grid
from models.schemas import IdentityReport, Mismatch
from services.exact.rational import format_rational

logger = logging.getLogger(__name__)

ZERO = Fraction(0)
ONE = Fraction(1)


def to_grid(rows: Iterable[Iterable]) -> Grid:
    return tuple(tuple(Fraction(value) for value in row) for row in rows)


def identity(m: int) -> Grid:
    return tuple(tuple(ONE if i == j else ZERO for j in range(m)) for i in range(m))


def diagonal(entries: Sequence[Fraction]) -> Grid:
    m = len(entries)
    return tuple(
        tuple(Fraction(entries[i]) if i == j else ZERO for j in range(m)) for i in range(m)
    )


def transpose(g: Grid) -> Grid:
    return tuple(zip(*g)) if g else ()


def matmul(left: Grid, right: Grid) -> Grid:
    if left and right and len(left[0]) != len(right):
        raise ValueError(f"Shape mismatch: {len(left)}x{len(left[0])} times {len(right)}x{len(right[0])}")
    columns = transpose(right)
    return tuple(
        tuple(sum((a * b for a, b in zip(row, col)), ZERO) for col in columns)
        for row in left
    )


def matmul_chain(*grids: Grid) -> Grid:
    result = grids[0]
    for g in grids[1:]:
        result = matmul(result, g)
    return result


def scale_rows(d: Sequence[Fraction], g: Grid) -> Grid:
    """diag(d) * g without building the diagonal matrix."""
    return tuple(tuple(d[i] * value for value in row) for i, row in enumerate(g))


def scale_cols(g: Grid, d: Sequence[Fraction]) -> Grid:
    """g * diag(d)."""
    return tuple(tuple(value * d[j] for j, value in enumerate(row)) for row in g)


def scale(g: Grid, factor: Fraction) -> Grid:
    return tuple(tuple(factor * value for value in row) for row in g)


def add(left: Grid, right: Grid) -> Grid:
    return tuple(tuple(a + b for a, b in zip(r1, r2)) for r1, r2 in zip(left, right))


def subtract(left: Grid, right: Grid) -> Grid:
    return tuple(tuple(a - b for a, b in zip(r1, r2)) for r1, r2 in zip(left, right))


def is_unit_lower(g: Grid) -> bool:
    m = len(g)
    return all(g[i][i] == ONE for i in range(m)) and all(
        g[i][j] == ZERO for i in range(m) for j in range(i + 1, m)
    )


def to_float(g: Grid) -> np.ndarray:
    return np.array([[float(value) for value in row] for row in g], dtype=float)


def to_strings(g: Grid) -> list:
    return [[format_rational(value) for value in row] for row in g]


def first_mismatch(lhs: Grid, rhs: Grid) -> Optional[Mismatch]:
    """Scan row-major and return the first differing entry, or None."""
    if len(lhs) != len(rhs):
        return Mismatch(quantity="shape", lhs=str(len(lhs)), rhs=str(len(rhs)))
    for i, (r1, r2) in enumerate(zip(lhs, rhs)):
        if len(r1) != len(r2):
            return Mismatch(row=i, quantity="shape", lhs=str(len(r1)), rhs=str(len(r2)))
        for j, (a, b) in enumerate(zip(r1, r2)):
            if a != b:
                return Mismatch(row=i, col=j, lhs=format_rational(a), rhs=format_rational(b))
    return None


def compare(name: str, lhs: Grid, rhs: Grid) -> IdentityReport:
    """Entry-exact comparison packaged as an identity report."""
    mismatch = first_mismatch(lhs, rhs)
    if mismatch is not None:
        logger.debug(f"Identity '{name}' fails at ({mismatch.row}, {mismatch.col}): {mismatch.lhs} != {mismatch.rhs}")
    return IdentityReport(name=name, holds=mismatch is None, first_mismatch=mismatch)


def compare_scalar(name: str, quantity: str, lhs: Fraction, rhs: Fraction) -> IdentityReport:
    if lhs == rhs:
        return IdentityReport(name=name, holds=True)
    return IdentityReport(
        name=name,
        holds=False,
        first_mismatch=Mismatch(quantity=quantity, lhs=format_rational(lhs), rhs=format_rational(rhs)),
    )


def combine(name: str, *reports: IdentityReport) -> IdentityReport:
    """Conjunction of several reports; keeps the first failure."""
    for report in reports:
        if not report.holds:
            return IdentityReport(name=name, holds=False, first_mismatch=report.first_mismatch)
    return IdentityReport(name=name, holds=True)
