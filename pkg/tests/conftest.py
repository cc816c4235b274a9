import math

import pytest

from noisyevo import RandomStream


@pytest.fixture
def rng():
    return RandomStream(20240611)


def within_se(estimate, expected, se, k=3.0):
    return abs(estimate - expected) <= k * se


def binomial_se(p, trials):
    return math.sqrt(p * (1 - p) / trials)
