from fractions import Fraction

import pytest

from rank1daha.params import make_params


@pytest.fixture(scope="session")
def sym():
    """Fully generic parameters: coefficients stay rational functions."""
    return make_params("symbolic")


@pytest.fixture(scope="session")
def gpoint():
    """A generic rational point; nothing about it is special."""
    return make_params(
        "specialized",
        {"q": Fraction(3, 2), "a": 2, "b": 3, "c": 5, "d": 7},
    )


@pytest.fixture(scope="session")
def spoint():
    """A point where abcd/q = 4, so the square root s = 2 is rational and
    the duality maps stay inside the plain coefficient field."""
    return make_params(
        "specialized",
        {"q": Fraction(1155, 4), "a": 3, "b": 5, "c": 7, "d": 11},
    )
