from __future__ import annotations

import os

import pytest
from hypothesis import HealthCheck, settings

from multicat import catalog

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.register_profile("ci", max_examples=25, deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture
def chain3():
    return catalog.chain(3)


@pytest.fixture
def vpos():
    return catalog.v_poset()


@pytest.fixture
def vinc():
    return catalog.v_inclusion()
