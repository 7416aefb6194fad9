import math

import numpy as np
import pytest

from twisted_cc.geometry import Configuration


def direct_ring_sum(n, a, x, theta, weight="unit", p=1.5):
    """Plain loop over vertices; independent of the vectorized kernel path."""
    w = {"unit": lambda t: 1.0, "cosine": math.cos, "sine": math.sin}[weight]
    total = []
    for j in range(1, n + 1):
        phi = 2 * math.pi * j / n + theta
        total.append(w(phi) / (1 + a * a - 2 * a * math.cos(phi) + x) ** p)
    return math.fsum(total)


def brute_pairwise_constant(n):
    pts = [(math.cos(2 * math.pi * k / n), math.sin(2 * math.pi * k / n)) for k in range(n)]
    s = math.fsum(1 / math.dist(pts[j], pts[k]) for j in range(n) for k in range(j + 1, n))
    return s / n


def regular_tetrahedron(edge=2.0, masses=(1.0, 1.0, 1.0, 1.0)):
    v = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], dtype=float)
    v *= edge / (2 * math.sqrt(2))
    return Configuration(v, masses).recentered()


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)
