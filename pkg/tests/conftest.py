import pytest

from symnash.core import SymmetricGame

RPS = [[0, -1, 1], [1, 0, -1], [-1, 1, 0]]
PD = [[3, 0], [5, 1]]
COORD = [[1, 0], [0, 1]]
CONST_COL = [[1, 0], [1, 2]]


@pytest.fixture
def rps():
    return SymmetricGame(RPS)


@pytest.fixture
def pd():
    return SymmetricGame(PD)


@pytest.fixture
def coord():
    return SymmetricGame(COORD)


@pytest.fixture
def const_col():
    return SymmetricGame(CONST_COL)
