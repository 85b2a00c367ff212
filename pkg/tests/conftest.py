"""
Shared fixtures: the Wallach threefold, P², P¹ and a seeded generator
"""
import os
import sys

import numpy as np
import pytest

sys.path.append(os.path.join(os.path.dirname(__file__), '..'))

from config.settings import settings
from tests.flag_samples import make_flag


@pytest.fixture
def rng():
    return np.random.default_rng(settings.RANDOM_SEED)


@pytest.fixture
def wallach():
    """A2 full flag, the Wallach threefold P(T_P²)"""
    return make_flag('A', 2)


@pytest.fixture
def wallach_omega(wallach):
    return wallach.kahler_class([2, 2])


@pytest.fixture
def projective_plane():
    return make_flag('A', 2, [1])


@pytest.fixture
def projective_line():
    return make_flag('A', 1)
