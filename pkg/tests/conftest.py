import os
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.abspath(os.path.join(os.path.dirname(__file__), "..")))

settings.register_profile("default", max_examples=100, deadline=None)
settings.register_profile("ci", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.getenv("HYPOTHESIS_PROFILE", "default"))

from config import Config  # noqa: E402


@pytest.fixture
def config():
    return Config()
