from fractions import Fraction

import pytest

# Variance grid shared by the exact identity suites.
SIGMA2_GRID = [Fraction(1), Fraction(4), Fraction(1, 4), Fraction(9, 49)]
ORDERS = range(1, 13)


@pytest.fixture(autouse=True)
def _clean_environment(monkeypatch):
    """Keep HANKEL_* variables from the developer's shell out of the tests."""
    import os

    for key in list(os.environ):
        if key.startswith("HANKEL_"):
            monkeypatch.delenv(key, raising=False)
