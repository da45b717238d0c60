# src/python/tests/conftest.py

from hypothesis import settings
import pytest

from tripartite_verify.core import default_config
from tripartite_verify.numbers import NumberTables, shared_tables

settings.register_profile("repo", derandomize=True, deadline=None, max_examples=100)
settings.load_profile("repo")


@pytest.fixture(scope="session")
def tables() -> NumberTables:
    """Return the shared k = 3 tables up to n = 700."""
    return shared_tables()


@pytest.fixture(scope="session")
def config():
    """Return the packaged default configuration."""
    return default_config()
