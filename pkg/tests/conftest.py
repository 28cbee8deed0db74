import numpy as np
import pytest

from qgabor.grid import GridGeometry


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def discrete8():
    return GridGeometry.discrete(8)


@pytest.fixture
def quad8():
    return GridGeometry.quadrature(8, L1=4.0)

