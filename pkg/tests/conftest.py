import pytest

from config import TestConfig
from ordseek import configure


@pytest.fixture(autouse=True)
def test_config():
    return configure(TestConfig)


@pytest.fixture
def settings(test_config):
    """Mutable view of the active settings; restored by the next test's configure()."""
    return test_config
