import pytest

from planarft.generators import diamond, grid, line3


@pytest.fixture
def g_line3():
    return line3()


@pytest.fixture
def g_diamond():
    return diamond()


@pytest.fixture
def g_grid3():
    return grid(3)


@pytest.fixture
def g_grid4():
    return grid(4)
