"""pytest configuration for all tests."""
import pytest

from charstack.algebra import symbols


@pytest.fixture(scope="session")
def q():
    """The variable q."""
    (q,) = symbols("q")
    return q


@pytest.fixture(scope="session")
def zw():
    """The variables z and w of the Cauchy kernel."""
    return symbols("z w")
