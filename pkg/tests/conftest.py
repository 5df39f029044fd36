import random

import pytest

from lamtower.domains import Tower, flat_base


@pytest.fixture
def rng():
    return random.Random(20240817)


@pytest.fixture(scope="session")
def tower():
    return Tower(flat_base())
