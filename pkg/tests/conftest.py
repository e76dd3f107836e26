import numpy as np
import pytest

from plurikp.cells import CellKind, OrientedCell


@pytest.fixture
def rng():
    return np.random.default_rng(20240801)


@pytest.fixture
def black_ambo():
    return OrientedCell(CellKind.BLACK_AMBO4, (0, 0, 0, 0, 0), (0, 1, 2, 3, 4))


@pytest.fixture
def white_ambo():
    return OrientedCell(CellKind.WHITE_AMBO4, (0, 0, 0, 0, 0), (0, 1, 2, 3, 4))


@pytest.fixture
def cube4():
    return OrientedCell(CellKind.CUBE4, (0, 0, 0, 0), (0, 1, 2, 3))
