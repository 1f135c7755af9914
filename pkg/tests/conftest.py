import pytest

from lgdiv.algebra import gf, parse_ratfunc


@pytest.fixture
def F2():
    return gf(1)


@pytest.fixture
def F4():
    return gf(2)


@pytest.fixture
def rf2():
    F = gf(1)
    return lambda text: parse_ratfunc(text, F)


@pytest.fixture
def rf4():
    F = gf(2)
    return lambda text: parse_ratfunc(text, F)
