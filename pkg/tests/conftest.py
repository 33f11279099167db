import pytest

from geomon.laws import builtin_family


@pytest.fixture(scope="session")
def ald():
    return builtin_family("ALD")


@pytest.fixture(scope="session")
def ld():
    return builtin_family("LD")


@pytest.fixture(scope="session")
def assoc():
    return builtin_family("A")
