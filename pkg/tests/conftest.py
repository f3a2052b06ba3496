import random

import pytest
from hypothesis import strategies as st

from oagw.sampling import random_element


def seeded_elements(construction, *, allow_zero=True):
    """Hypothesis strategy: deterministic sampler driven by a drawn seed."""

    def build(seed: int):
        return random_element(random.Random(seed), construction, allow_zero=allow_zero)

    return st.integers(min_value=0, max_value=2**40).map(build)


@pytest.fixture
def rng():
    return random.Random(20240801)
