from fractions import Fraction

import pytest

from services.errors import DimensionError, InvalidDistributionError
from services.verification import GRID_CHECKS, ORDER_CHECKS, VerificationService, cmd_verify


def test_small_grid_passes():
    report = cmd_verify(3, [1])
    assert report.overall == "pass"
    assert {check.name for check in report.checks} == set(GRID_CHECKS) | set(ORDER_CHECKS)
    assert all(check.status == "pass" for check in report.checks)


def test_scalar_grid_passes():
    report = cmd_verify(1, ["1"])
    assert report.overall == "pass"
    assert report.m_max == 1


def test_default_grid_passes():
    report = cmd_verify(12, ["1", "4", "1/4", "9/49"], workers=4)
    assert report.overall == "pass"
    assert report.sigma2 == ["1", "4", "1/4", "9/49"]
    assert len(report.checks) == 12 * (len(ORDER_CHECKS) + 4 * len(GRID_CHECKS))


def test_report_is_sorted():
    report = cmd_verify(3, ["1/4", "4"], workers=3)
    keys = [
        (check.name, check.m, Fraction(check.sigma2) if check.sigma2 else Fraction(-1))
        for check in report.checks
    ]
    assert keys == sorted(keys)


def test_order_checks_carry_no_variance():
    report = cmd_verify(2, [4])
    for check in report.checks:
        assert (check.sigma2 is None) == (check.name in ORDER_CHECKS)


def test_plan_size():
    cells = VerificationService(workers=2).plan(2, [Fraction(1), Fraction(4)])
    assert len(cells) == 2 * (len(ORDER_CHECKS) + 2 * len(GRID_CHECKS))


def test_invalid_variance():
    with pytest.raises(InvalidDistributionError):
        cmd_verify(2, ["-1"])


def test_invalid_order():
    with pytest.raises(DimensionError):
        cmd_verify(0, ["1"])
