import pathlib

import pytest

from sepal.constructions import build_emn
from sepal.graphio import load_graph

FIXTURES = pathlib.Path(__file__).resolve().parent.parent / "fixtures"


@pytest.fixture(scope="session")
def e23():
    return build_emn(2, 3)


@pytest.fixture(scope="session")
def wmax22():
    return load_graph(str(FIXTURES / "wmax22.txt"))


@pytest.fixture(scope="session")
def omega0_35():
    return load_graph(str(FIXTURES / "omega0_35.txt"))


@pytest.fixture(scope="session")
def fixture_dir():
    return FIXTURES
