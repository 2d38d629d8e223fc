import os

import pytest
from hypothesis import HealthCheck, settings

from lacc.identity import generate_full, load_appendix

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def system():
    return generate_full()


@pytest.fixture(scope="session")
def reference():
    return load_appendix()
