from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from services.errors import DimensionError
from services.factorization import ldl_decompose
from services.hankel import (
    build_A,
    build_B,
    check_determinant_products,
    check_recurrence,
    check_recurrence_alternate,
    check_recurrence_quadratic,
    check_scaling_split,
    determinant,
    order_diagonal,
    sigma_diagonal,
)
from services.moments import empirical_even_moments, explicit_even_moments, gaussian_even_moments, uniform_even_moments
from tests.conftest import ORDERS, SIGMA2_GRID


def test_example_one_matrices():
    moments = gaussian_even_moments(3, 1)
    assert build_A(moments).entries == ((1, 1, 3), (1, 3, 15), (3, 15, 105))
    assert build_B(moments).entries == ((1, 3, 15), (3, 15, 105), (15, 105, 945))
    assert build_B(moments).shift == 1


def test_hankel_structure_is_constant_on_anti_diagonals():
    entries = build_A(gaussian_even_moments(5, Fraction(9, 49))).entries
    for i in range(5):
        for j in range(5):
            if i + 1 < 5 and j > 0:
                assert entries[i][j] == entries[i + 1][j - 1]


def test_build_rejects_short_sequence():
    moments = explicit_even_moments([1, 1, 3, 15], 2)
    with pytest.raises(DimensionError):
        build_A(moments, 3)
    with pytest.raises(DimensionError):
        build_B(moments, 3)


def test_diagonals():
    assert order_diagonal(3).diag == (1, 3, 5)
    assert sigma_diagonal(3, 4).diag == (1, 4, 16)
    assert sigma_diagonal(2, 4).inverse().diag == (1, Fraction(1, 4))


def test_determinants_of_unit_gaussian_matrices():
    moments = gaussian_even_moments(3, 1)
    det_a = determinant(build_A(moments))
    det_b = determinant(build_B(moments))
    assert det_a == 48
    assert det_b == 720
    assert det_b / det_a == 15


@pytest.mark.parametrize(
    "grid, expected",
    [
        (((Fraction(0), Fraction(1)), (Fraction(1), Fraction(0))), -1),
        (((Fraction(1), Fraction(2)), (Fraction(2), Fraction(4))), 0),
        (((Fraction(1, 2), Fraction(1, 3)), (Fraction(1, 4), Fraction(1, 5))), Fraction(1, 60)),
        ((), 1),
    ],
)
def test_determinant_small_cases(grid, expected):
    assert determinant(grid) == expected


@pytest.mark.parametrize("sigma2", SIGMA2_GRID)
@pytest.mark.parametrize("m", ORDERS)
def test_gaussian_identities_on_grid(m, sigma2):
    moments = gaussian_even_moments(m, sigma2)
    A, B = build_A(moments), build_B(moments)
    assert check_recurrence(A, B, sigma2)
    assert check_recurrence_alternate(A, B, sigma2)
    assert check_scaling_split(A, B, sigma2)
    assert check_determinant_products(m, sigma2)


def test_recurrence_fails_for_uniform_distribution():
    moments = uniform_even_moments(2, 1)
    report = check_recurrence(build_A(moments), build_B(moments), 1)
    assert not report.holds
    assert report.first_mismatch is not None
    assert (report.first_mismatch.row, report.first_mismatch.col) == (0, 1)


def test_recurrence_is_trivial_at_order_one():
    moments = uniform_even_moments(1, 1)
    assert check_recurrence(build_A(moments), build_B(moments), 1)


def test_example_one_recurrence_quadratic():
    assert check_recurrence_quadratic([15, -10, 1], gaussian_even_moments(3, 1))


@settings(max_examples=30, deadline=None)
@given(
    coefficients=st.lists(st.fractions(min_value=-10, max_value=10, max_denominator=20), min_size=1, max_size=5),
    sigma2=st.sampled_from(SIGMA2_GRID),
)
def test_recurrence_quadratic_for_random_polynomials(coefficients, sigma2):
    moments = gaussian_even_moments(len(coefficients), sigma2)
    assert check_recurrence_quadratic(coefficients, moments)


def test_build_A_for_gaussian_variance_four():
    assert build_A(gaussian_even_moments(2, 4)).entries == ((1, 4), (4, 48))


def _families(m, sigma2):
    return [
        gaussian_even_moments(m, sigma2),
        uniform_even_moments(m, sigma2),
        empirical_even_moments(["1/2", "-3/2", "2", "0"], m),
    ]


@pytest.mark.parametrize("sigma2", SIGMA2_GRID)
@pytest.mark.parametrize("m", [1, 2, 4, 6])
def test_hankel_matrices_are_symmetric(m, sigma2):
    for moments in _families(m, sigma2):
        for h in (build_A(moments).entries, build_B(moments).entries):
            assert all(h[i][j] == h[j][i] for i in range(m) for j in range(m))


@pytest.mark.parametrize("sigma2", SIGMA2_GRID)
@pytest.mark.parametrize("m", [1, 2, 4, 6])
def test_B_is_A_shifted_by_one_column(m, sigma2):
    for moments in _families(m + 1, sigma2):
        A = build_A(moments, m + 1).entries
        B = build_B(moments, m).entries
        assert all(B[i][j] == A[i][j + 1] for i in range(m) for j in range(m))


@pytest.mark.parametrize("sigma2", SIGMA2_GRID)
@pytest.mark.parametrize("m", [2, 4, 6])
def test_principal_two_by_two_minors_are_non_negative(m, sigma2):
    for moments in _families(m, sigma2):
        for h in (build_A(moments).entries, build_B(moments).entries):
            for i in range(m):
                for j in range(i + 1, m):
                    assert h[i][i] * h[j][j] - h[i][j] * h[j][i] >= 0


@pytest.mark.parametrize("sigma2", SIGMA2_GRID)
@pytest.mark.parametrize("m", ORDERS)
def test_uniform_pivots_are_strictly_positive(m, sigma2):
    moments = uniform_even_moments(m, sigma2)
    for h in (build_A(moments), build_B(moments)):
        pivots = ldl_decompose(h, strict=True).pivots
        assert len(pivots) == m
        assert all(pivot > 0 for pivot in pivots)
