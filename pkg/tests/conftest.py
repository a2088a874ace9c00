import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from evofuzz import _backend

settings.register_profile(
    "default",
    max_examples=60,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
    deadline=None,
)
settings.load_profile("default")


@pytest.fixture(params=sorted(_backend.available_backends()))
def each_backend(request):
    """Run a test once per available kernel backend."""
    previous = _backend.backend_name()
    _backend.set_backend(request.param)
    yield request.param
    _backend.set_backend(previous)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
