import pytest

from hfmap.group import HeckeParams, cached_group
from hfmap.maps import build_algebraic_map, build_coordinate_graph


@pytest.fixture(scope="session")
def group45():
    return cached_group(4, 5)


@pytest.fixture(scope="session")
def group43():
    return cached_group(4, 3)


@pytest.fixture(scope="session")
def group35():
    return cached_group(3, 5)


@pytest.fixture(scope="session")
def map45(group45):
    return build_algebraic_map(group45)


@pytest.fixture(scope="session")
def map43(group43):
    return build_algebraic_map(group43)


@pytest.fixture(scope="session")
def map35(group35):
    return build_algebraic_map(group35)


@pytest.fixture(scope="session")
def graph45():
    return build_coordinate_graph(HeckeParams(4, 5))


@pytest.fixture(scope="session")
def graph43():
    return build_coordinate_graph(HeckeParams(4, 3))


@pytest.fixture(scope="session")
def graph35():
    return build_coordinate_graph(HeckeParams(3, 5))
