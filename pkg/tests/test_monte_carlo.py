from fractions import Fraction

import pytest

from models.domain import OddPolynomial
from services.errors import DegeneratePolynomialError, DimensionError, InvalidDistributionError
from services.optimizer import monte_carlo_gain

HERMITE_FIVE = OddPolynomial(a=(Fraction(15), Fraction(-10), Fraction(1)))


def test_hermite_five_estimate():
    estimate, standard_error = monte_carlo_gain(HERMITE_FIVE, 1, 1_000_000, seed=0)
    assert standard_error < 0.05
    assert abs(estimate - 5.0) <= 3 * standard_error
    assert estimate == pytest.approx(5.0, rel=0.01)


def test_fixed_seed_is_reproducible():
    first = monte_carlo_gain(HERMITE_FIVE, 1, 50_000, seed=11)
    second = monte_carlo_gain(HERMITE_FIVE, 1, 50_000, seed=11)
    assert first == second
    assert monte_carlo_gain(HERMITE_FIVE, 1, 50_000, seed=12) != first


@pytest.mark.parametrize("sigma2, expected", [(1, 1.0), (4, 0.25), (Fraction(1, 4), 4.0)])
@pytest.mark.parametrize("proposal_scale", [1.0, 3.0])
def test_linear_function(sigma2, expected, proposal_scale):
    estimate, standard_error = monte_carlo_gain([1], sigma2, 200_000, seed=3, proposal_scale=proposal_scale)
    assert abs(estimate - expected) <= 4 * standard_error


def test_rejects_too_few_samples():
    with pytest.raises(DimensionError):
        monte_carlo_gain([1], 1, 1, seed=0)


def test_rejects_narrow_proposal():
    with pytest.raises(InvalidDistributionError):
        monte_carlo_gain([1], 1, 100, seed=0, proposal_scale=0.4)


def test_zero_polynomial_is_degenerate():
    with pytest.raises(DegeneratePolynomialError):
        monte_carlo_gain([0, 0], 1, 1_000, seed=0)
