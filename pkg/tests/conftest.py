import os
import random
import sys

import pytest
from hypothesis import HealthCheck, settings

sys.path.insert(0, os.path.dirname(__file__))

from salab import textio
from salab.lie import LieAlgebraSpec

settings.register_profile(
    "salab",
    max_examples=25,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("salab")


@pytest.fixture
def gl2():
    return LieAlgebraSpec(2)


@pytest.fixture
def gl3():
    return LieAlgebraSpec(3)


@pytest.fixture
def rng():
    return random.Random(1234)


def F(text, n=2):
    return textio.parse_form(text, n)


def P(text, n=2):
    return textio.parse_poly(text, n)
