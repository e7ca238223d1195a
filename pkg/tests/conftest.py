import pytest
from hypothesis import HealthCheck, settings

from actforge.limits import set_size_cap

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(autouse=True)
def _reset_cap():
    set_size_cap(None)
    yield
    set_size_cap(None)
