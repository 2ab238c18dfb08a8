import os

import pytest
from hypothesis import HealthCheck, settings

from planarflow import build_graph

settings.register_profile(
    "default",
    max_examples=60,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.register_profile("thorough", max_examples=500, deadline=None)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))

# vertex names of the diamond graph used across the suite
S, A, B, T = 0, 1, 2, 3

# arcs s->a:3, s->b:2, a->t:2, b->t:3, a->b:1 drawn with s left, a top,
# b bottom, t right
DIAMOND_ARCS = [(S, A, 3), (S, B, 2), (A, T, 2), (B, T, 3), (A, B, 1)]
DIAMOND_ROTATION = [[0, 2], [1, 4, 8], [3, 9, 6], [5, 7]]


def diamond():
    return build_graph(4, DIAMOND_ARCS, DIAMOND_ROTATION)


@pytest.fixture
def g1():
    return diamond()


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
