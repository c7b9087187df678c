import pytest
from fixlog import Engine
from oracles import PROGRAMS


@pytest.fixture
def engine():
    return Engine()


@pytest.fixture
def programs_dir():
    return PROGRAMS
