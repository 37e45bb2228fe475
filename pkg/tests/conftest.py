import os

import pytest
from hypothesis import HealthCheck, settings

from levelgraph_lab.corpus import default_corpus

settings.register_profile(
    "repo", max_examples=60, deadline=None, derandomize=True, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "repo"))


@pytest.fixture(scope="session")
def corpus():
    return default_corpus()
