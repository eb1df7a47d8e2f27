import pytest

from quivermod import quiver


@pytest.fixture
def a2():
    return quiver(2, [("a", 1, 2)])


@pytest.fixture
def a3():
    return quiver(3, [("a", 1, 2), ("b", 2, 3)])


@pytest.fixture
def k2():
    return quiver(2, [("x", 1, 2), ("y", 1, 2)])


@pytest.fixture
def k3():
    return quiver(2, [("x", 1, 2), ("y", 1, 2), ("z", 1, 2)])


@pytest.fixture
def arrowfree2():
    return quiver(2, [])
