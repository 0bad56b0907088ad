import pytest

from pcentral.cayley import builtin_group
from pcentral.freepcentral import construct_free_pcentral, fpc_enumerate


def pytest_addoption(parser):
    parser.addoption("--slow", action="store_true", default=False, help="run slow tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--slow"):
        return
    skip = pytest.mark.skip(reason="needs --slow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


@pytest.fixture(scope="session")
def slow_enabled(request):
    return request.config.getoption("--slow")


@pytest.fixture(scope="session")
def g2_p2():
    """2G2 at p = 2, order 1024."""
    return fpc_enumerate(construct_free_pcentral(2, 2, 2))


@pytest.fixture(scope="session")
def g2_p3():
    return fpc_enumerate(construct_free_pcentral(3, 2, 2))


@pytest.fixture(scope="session")
def g1_p2():
    return fpc_enumerate(construct_free_pcentral(2, 2, 1))


@pytest.fixture(scope="session")
def g1_p3():
    return fpc_enumerate(construct_free_pcentral(3, 2, 1))


@pytest.fixture(scope="session")
def q8():
    return builtin_group("quaternion", 8)


@pytest.fixture(scope="session")
def d8():
    return builtin_group("dihedral", 8)
