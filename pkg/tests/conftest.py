import pytest
from hypothesis import settings

import corpus
from proximet import x_star

settings.register_profile("det", derandomize=True, database=None, deadline=None)
settings.load_profile("det")


@pytest.fixture(scope="session")
def rect():
    return corpus.rect_space()


@pytest.fixture(scope="session")
def quad():
    return corpus.quad_space()


@pytest.fixture(scope="session")
def xstar():
    return x_star()
