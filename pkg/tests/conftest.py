import pytest

from punctile.substitution import load_builtin


@pytest.fixture(scope="session")
def solid():
    return load_builtin("solid")


@pytest.fixture(scope="session")
def checkerboard():
    return load_builtin("checkerboard")


@pytest.fixture(scope="session")
def chair():
    return load_builtin("chair")
