import random

import pytest
from hypothesis import settings

settings.register_profile("repo", deadline=None, derandomize=True)
settings.load_profile("repo")


@pytest.fixture
def rng():
    return random.Random(20261018)
