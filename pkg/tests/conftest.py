import numpy as np
import pytest

from starpir.algebra import field_make


@pytest.fixture
def F2():
    return field_make(2)


@pytest.fixture
def F3():
    return field_make(3)


@pytest.fixture
def F11():
    return field_make(11)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
