import functools

import pytest

from utils.finite_field import build_field, factor_prime_power

SMALL_Q = [2, 3, 4, 5, 7, 8, 9]


@functools.lru_cache(maxsize=None)
def field(q: int):
    p, m = factor_prime_power(q)
    return build_field(p, m)


@pytest.fixture
def gf4():
    return field(4)


@pytest.fixture
def gf5():
    return field(5)


@pytest.fixture
def gf9():
    return field(9)
