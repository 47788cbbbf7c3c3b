import pytest

from hq import cache as hq_cache
from hq.field import find_restriction_unit, make_field


@pytest.fixture(autouse=True, scope="session")
def _memory_cache():
    """Tests never touch a cache file unless they ask for one."""
    hq_cache.set_cache_path(None)
    yield


@pytest.fixture(scope="session")
def F5():
    return make_field(5)


@pytest.fixture(scope="session")
def U5(F5):
    return find_restriction_unit(F5)
