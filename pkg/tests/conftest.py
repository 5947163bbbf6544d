"""Shared fixtures; the heavy exhaustive artifacts are session-scoped."""

import pytest

from ramify import BinomialContext, make_field
from ramify.analyzer import brute_force_survey
from ramify.enumeration import enumerate_ram_polygons


@pytest.fixture(scope="session")
def ctx_q2():
    return BinomialContext(make_field(2, 1, 1, 1))


@pytest.fixture(scope="session")
def ctx_q3():
    return BinomialContext(make_field(3, 1, 1, 1))


@pytest.fixture(scope="session")
def survey_q2_n2(ctx_q2):
    return brute_force_survey(ctx_q2, 2, 3)


@pytest.fixture(scope="session")
def survey_q2_n4(ctx_q2):
    return brute_force_survey(ctx_q2, 4, 5)


@pytest.fixture(scope="session")
def survey_q3_n3(ctx_q3):
    return brute_force_survey(ctx_q3, 3, 3)


@pytest.fixture(scope="session")
def ram16(ctx_q2):
    polygons, stats = enumerate_ram_polygons(ctx_q2, 16)
    return polygons, stats
