import pytest

from cantorbase.numberfield import make_field


@pytest.fixture(scope="session")
def Q():
    return make_field([0, 1])


@pytest.fixture(scope="session")
def golden():
    return make_field([-1, -1, 1])


@pytest.fixture(scope="session")
def sqrt2():
    return make_field([-2, 0, 1])


@pytest.fixture(scope="session")
def plastic():
    """Field of the smallest Pisot number, root of x^3 - x - 1."""
    return make_field([-1, -1, 0, 1])


@pytest.fixture(scope="session")
def gamma5_field():
    return make_field([-1, -3, -3, 1])
