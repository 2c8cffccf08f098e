"""
Verification Service Module

This module runs the exact identity suite over a grid of orders M and
variances sigma^2. Each (check, M, sigma^2) cell is independent, so the grid
fans out across worker threads and the report is assembled once every cell
has finished.
"""

import asyncio
import logging
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence

from models.schemas import CheckResult, IdentityReport, Mismatch, VerifyReport
from services.errors import DimensionError
from services.exact import matrix as mx
from services.exact.rational import RationalLike, format_rational, parse_positive_rational
from services.factorization import (
    check_hermite_gram,
    check_lemma1,
    check_theorem1_reconstruction,
    closed_form_factors,
    ldl_decompose,
    verify_theorem1,
)
from services.hankel import (
    build_A,
    build_B,
    check_determinant_products,
    check_recurrence,
    check_recurrence_alternate,
    check_scaling_split,
)
from services.hermite import check_commute, check_derivative_identity, orthogonality_table
from services.moments import gaussian_even_moments, uniform_even_moments

logger = logging.getLogger(__name__)


def _gaussian_pair(m: int, sigma2: Fraction):
    moments = gaussian_even_moments(m, sigma2)
    return build_A(moments), build_B(moments)


def _recurrence(m: int, sigma2: Fraction) -> IdentityReport:
    A, B = _gaussian_pair(m, sigma2)
    return check_recurrence(A, B, sigma2)


def _recurrence_alternate(m: int, sigma2: Fraction) -> IdentityReport:
    A, B = _gaussian_pair(m, sigma2)
    return check_recurrence_alternate(A, B, sigma2)


def _scaling_split(m: int, sigma2: Fraction) -> IdentityReport:
    A, B = _gaussian_pair(m, sigma2)
    return check_scaling_split(A, B, sigma2)


def _closed_form_factors(m: int, sigma2: Fraction) -> IdentityReport:
    """Elimination and closed-form LDL factors of the Gaussian A and B agree entrywise."""
    A, B = _gaussian_pair(m, sigma2)
    closed_a, closed_b = closed_form_factors(m, sigma2)
    reports = []
    for label, matrix, closed in (("A", A, closed_a), ("B", B, closed_b)):
        eliminated = ldl_decompose(matrix)
        reports.append(mx.compare(f"closed_form_factors_{label}", eliminated.lower, closed.lower))
        reports.append(mx.compare(f"closed_form_pivots_{label}", (eliminated.pivots,), (closed.pivots,)))
    return mx.combine("closed_form_factors", *reports)


def _orthogonality(m: int) -> IdentityReport:
    return orthogonality_table(2 * m - 1)


def _derivative_identity(m: int) -> IdentityReport:
    return check_derivative_identity(2 * m - 1)


def _recurrence_negative_control(m: int) -> IdentityReport:
    """
    The Gaussian recurrence must fail for the uniform law once M >= 2.
    At M = 1 both sides reduce to 2 for every distribution.
    """
    moments = uniform_even_moments(m, 1)
    report = check_recurrence(build_A(moments), build_B(moments), 1)
    expected = m == 1
    if report.holds == expected:
        return IdentityReport(name="recurrence_negative_control", holds=True)
    return IdentityReport(
        name="recurrence_negative_control",
        holds=False,
        first_mismatch=Mismatch(
            quantity="uniform recurrence",
            lhs="holds" if report.holds else "fails",
            rhs="holds" if expected else "fails",
        ),
    )


GRID_CHECKS = {
    "theorem1": verify_theorem1,
    "theorem1_reconstruction": check_theorem1_reconstruction,
    "lemma1": check_lemma1,
    "determinant_products": check_determinant_products,
    "recurrence": _recurrence,
    "recurrence_alternate": _recurrence_alternate,
    "scaling_split": _scaling_split,
    "closed_form_factors": _closed_form_factors,
}

ORDER_CHECKS = {
    "commute": check_commute,
    "hermite_gram": check_hermite_gram,
    "orthogonality": _orthogonality,
    "derivative_identity": _derivative_identity,
    "recurrence_negative_control": _recurrence_negative_control,
}


@dataclass(frozen=True)
class _Cell:
    name: str
    m: int
    sigma2: Optional[Fraction]
    check: Callable[..., IdentityReport]

    def execute(self) -> CheckResult:
        started = time.perf_counter()
        if self.sigma2 is None:
            report = self.check(self.m)
        else:
            report = self.check(self.m, self.sigma2)
        elapsed_ms = (time.perf_counter() - started) * 1000.0
        if not report.holds:
            logger.warning(f"Check {self.name} failed at M={self.m}, sigma2={self.sigma2}: {report.first_mismatch}")
        return CheckResult(
            name=self.name,
            m=self.m,
            sigma2=None if self.sigma2 is None else format_rational(self.sigma2),
            status="pass" if report.holds else "fail",
            first_mismatch=report.first_mismatch,
            elapsed_ms=round(elapsed_ms, 3),
        )


def _sort_key(result: CheckResult):
    return (result.name, result.m, Fraction(result.sigma2) if result.sigma2 is not None else Fraction(-1))


class VerificationService:
    """
    Runs the verify grid.
    Cells execute in worker threads, at most `workers` at a time.
    """

    def __init__(self, workers: int = 4):
        self.workers = max(1, workers)

    def plan(self, m_max: int, sigma2_list: Sequence[Fraction]) -> List[_Cell]:
        cells = []
        for m in range(1, m_max + 1):
            for name, check in ORDER_CHECKS.items():
                cells.append(_Cell(name, m, None, check))
            for sigma2 in sigma2_list:
                for name, check in GRID_CHECKS.items():
                    cells.append(_Cell(name, m, sigma2, check))
        return cells

    async def run(self, m_max: int, sigma2_list: Sequence[RationalLike]) -> VerifyReport:
        if m_max < 1:
            raise DimensionError(f"m_max must be at least 1, got {m_max}", {"m_max": m_max})
        variances = [parse_positive_rational(value) for value in sigma2_list]
        cells = self.plan(m_max, variances)
        logger.info(f"Running {len(cells)} verification cells (M <= {m_max}, {len(variances)} variances)")
        semaphore = asyncio.Semaphore(self.workers)

        async def _run_cell(cell: _Cell) -> CheckResult:
            async with semaphore:
                return await asyncio.to_thread(cell.execute)

        try:
            results = await asyncio.gather(*(_run_cell(cell) for cell in cells))
        except Exception as e:
            logger.error(f"Verification grid aborted: {str(e)}", exc_info=True)
            raise

        checks = sorted(results, key=_sort_key)
        failed = sum(1 for check in checks if check.status == "fail")
        logger.info(f"Verification finished: {len(checks) - failed} passed, {failed} failed")
        return VerifyReport(
            m_max=m_max,
            sigma2=[format_rational(value) for value in variances],
            checks=checks,
            overall="pass" if failed == 0 else "fail",
        )


def cmd_verify(m_max: int, sigma2_list: Sequence[RationalLike], workers: int = 4) -> VerifyReport:
    """Synchronous entry point for the verify command."""
    return asyncio.run(VerificationService(workers).run(m_max, sigma2_list))
