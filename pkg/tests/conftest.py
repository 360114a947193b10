from fractions import Fraction

import numpy as np
import pytest
from hypothesis import settings

from ordfix import FiniteOrderedMetricSpace, Instance, MappingPair, presets

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


def line_space(points, labels=None):
    """Points of the real line with the natural order and |x - y|."""
    pts = [Fraction(p) for p in points]
    order = [[a <= b for b in pts] for a in pts]
    metric = [[abs(a - b) for b in pts] for a in pts]
    return FiniteOrderedMetricSpace(order, metric, labels)


def discrete_space(order, scale=1):
    """Any order relation with the discrete metric ``scale`` off the diagonal."""
    n = len(order)
    metric = [[0 if i == j else scale for j in range(n)] for i in range(n)]
    return FiniteOrderedMetricSpace(order, metric)


def antichain(n):
    return discrete_space(np.eye(n, dtype=bool))


def make(space, f, g=None, **kw):
    g = list(range(space.n)) if g is None else g
    return Instance(space, MappingPair(f, g), **kw)


@pytest.fixture
def grid():
    return presets.square_grid()


@pytest.fixture
def interval():
    return presets.square_interval()


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is not None and mod.RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in mod.RESULTS:
            terminalreporter.write_line(line)
