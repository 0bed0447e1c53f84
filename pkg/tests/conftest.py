import pytest

from entbound import coupled_system


@pytest.fixture(scope="session")
def sys4():
    return coupled_system(4)


@pytest.fixture(scope="session")
def sys6():
    return coupled_system(6)


@pytest.fixture(scope="session")
def sys8():
    return coupled_system(8)
