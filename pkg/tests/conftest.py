import pytest

from ewn import build_tables


@pytest.fixture(scope="session")
def tables():
    return build_tables()
