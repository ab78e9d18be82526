import mpmath as mp
import pytest

mp.mp.dps = 35


@pytest.fixture(scope="session")
def mp35():
    return mp
