from fractions import Fraction

import pytest

from nuframes import FrequencyGrid, preset


@pytest.fixture(scope="session")
def ex51():
    return preset("ex5.1")


@pytest.fixture(scope="session")
def ex52():
    return preset("ex5.2")


@pytest.fixture(scope="session")
def grid14():
    """Coarse working grid, fast enough for per-test lattice sums."""
    return FrequencyGrid(Fraction(0), Fraction(1, 2), 14)
