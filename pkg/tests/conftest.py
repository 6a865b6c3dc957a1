import pytest

from pibound import build_table


@pytest.fixture(scope="session")
def table():
    """Workhorse table to 10**6; building it takes well under a second."""
    return build_table(1_000_000)


@pytest.fixture(scope="session")
def small_table():
    return build_table(1000)
