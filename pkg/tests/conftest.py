import numpy as np
import pytest

from pwlcanard import golden_cases


@pytest.fixture(scope="session")
def cases():
    return golden_cases()


@pytest.fixture
def rng():
    return np.random.default_rng(2026)
