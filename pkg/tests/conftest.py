import json
import math
import pytest
import numpy as np

from kcenter import Instance, Euclidean, LInf, Interval, Halfspaces, CenterConfiguration

SQUARE = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0], [1.0, 1.0]]
LINE = [[0.0], [1.0], [10.0]]
TRIANGLE = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]]
SQRT_HALF = math.sqrt(2) / 2


def square_halfspaces():
    """The square with vertices (+-1, +-1) written by its four facets."""
    return Halfspaces([[1, 0], [-1, 0], [0, 1], [0, -1]])


def skew_triangle():
    """Asymmetric triangle with vertices (1, 1), (1, -3), (-3, 1)."""
    return Halfspaces([[1, 0], [0, 1], [-0.5, -0.5]])


@pytest.fixture
def square():
    return Instance(SQUARE, Euclidean())


@pytest.fixture
def square_linf():
    return Instance(SQUARE, LInf())


@pytest.fixture
def line():
    return Instance(LINE, Euclidean())


@pytest.fixture
def triangle():
    return Instance(TRIANGLE, Euclidean())


@pytest.fixture
def triangle_config():
    return CenterConfiguration([[0.5, 0.5], [-0.01, -0.01]])


def random_points(rng, m, d, low=0.0, high=1.0):
    return rng.uniform(low, high, size=(m, d))


@pytest.fixture
def write_instance(tmp_path):
    def write(name, points, gauge, dimension=None):
        path = tmp_path / ("%s.json" % name)
        if dimension is None:
            dimension = len(points[0])
        path.write_text(json.dumps({"dimension": dimension, "points": points, "gauge": gauge}))
        return str(path)
    return write
