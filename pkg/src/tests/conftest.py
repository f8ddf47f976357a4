import os

import pytest
from hypothesis import HealthCheck, settings

from gabriel_roiter.config import Settings, get_settings
from gabriel_roiter.fixtures import zigzag_labeling, zigzag_poset
from gabriel_roiter.repcat import FieldSpec

# exact arithmetic on exhaustive enumerations is slow, so no deadline
settings.register_profile(
    "deterministic",
    derandomize=True,
    deadline=None,
    max_examples=100,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", deadline=None, max_examples=1000)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "deterministic"))


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Each test sees the default caps unless it sets GR_* itself."""
    for name in Settings.model_fields:
        monkeypatch.delenv(f"GR_{name.upper()}", raising=False)
    get_settings.cache_clear()
    yield
    get_settings.cache_clear()


@pytest.fixture
def zigzag():
    return zigzag_poset()


@pytest.fixture
def lam0():
    return zigzag_labeling(0)


@pytest.fixture
def f2():
    return FieldSpec(2)


@pytest.fixture
def f3():
    return FieldSpec(3)
