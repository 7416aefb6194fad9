"""Trigonometric sums over the vertices of a regular N-gon.

Every reduced equation is assembled from sums of the form

    sum_{j=1..N} w(t_j + theta) / (1 + a^2 - 2 a cos(t_j + theta) + x)^p,

with ``t_j = 2 pi j / N`` and weight ``w`` one of 1, cos, sin. With ``x = h^2``
the denominator is the squared distance between a lower-ring vertex and an
upper-ring vertex.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Literal, NamedTuple

import numpy as np

from .errors import DegenerateConfigurationError, InvalidArgumentError
from .geometry import COINCIDENCE_TOL, regular_polygon, vertex_angles
from .oracle import potential_U
from .summation import compensated_sum

Weight = Literal["unit", "cosine", "sine"]
_WEIGHTS = {"unit": None, "cosine": np.cos, "sine": np.sin}


@dataclass(frozen=True)
class KernelQuery:
    n_gon: int
    size_ratio: float
    shift: float
    twist: float
    weight: Weight = "unit"
    exponent: float = 1.5

    def __post_init__(self):
        if self.n_gon < 2:
            raise InvalidArgumentError(f"n_gon must be >= 2, got {self.n_gon}")
        if self.size_ratio <= 0:
            raise InvalidArgumentError(f"size_ratio must be > 0, got {self.size_ratio}")
        if self.shift < 0:
            raise InvalidArgumentError(f"shift must be >= 0, got {self.shift}")
        if self.exponent <= 0:
            raise InvalidArgumentError(f"exponent must be > 0, got {self.exponent}")
        if self.weight not in _WEIGHTS:
            raise InvalidArgumentError(f"unknown weight {self.weight!r}")


def ring_sum(n_gon, size_ratio, shift, twist, weight: Weight = "unit", exponent: float = 1.5):
    """Vectorized kernel sum.

    ``size_ratio``, ``shift`` and ``twist`` broadcast against each other; the
    result has their broadcast shape (a float for scalar inputs).
    """
    if weight not in _WEIGHTS:
        raise InvalidArgumentError(f"unknown weight {weight!r}")
    a, x, th = np.broadcast_arrays(
        np.asarray(size_ratio, dtype=float), np.asarray(shift, dtype=float), np.asarray(twist, dtype=float)
    )
    phi = th[..., None] + vertex_angles(n_gon)
    a_ = a[..., None]
    denom = 1.0 + a_ * a_ - 2.0 * a_ * np.cos(phi) + x[..., None]
    if np.any(denom < COINCIDENCE_TOL**2):
        raise DegenerateConfigurationError("kernel denominator vanishes (coincident ring vertices)")
    terms = denom ** (-exponent)
    w = _WEIGHTS[weight]
    if w is not None:
        terms = w(phi) * terms
    return compensated_sum(terms, axis=-1)


def kernel_sum(q: KernelQuery):
    return ring_sum(q.n_gon, q.size_ratio, q.shift, q.twist, q.weight, q.exponent)


def ring_self_force(n_gon: int) -> float:
    """Radial pull on a unit-ring vertex from its N-1 ring mates, (1/4) sum csc(pi j/N)."""
    if n_gon < 2:
        raise InvalidArgumentError(f"n_gon must be >= 2, got {n_gon}")
    return 0.25 * math.fsum(1.0 / math.sin(math.pi * j / n_gon) for j in range(1, n_gon))


def ring_self_force_pairwise(n_gon: int) -> float:
    """Same constant from the ring's pairwise potential, (1/N) sum_{j<k} 1/|rho_j - rho_k|."""
    return potential_U(regular_polygon(n_gon)) / n_gon


def tangential_force(n_gon, size_ratio, layer_distance, twist):
    """Tangential balance f(theta); a twisted pair can only be central where it vanishes."""
    h = np.asarray(layer_distance, dtype=float)
    return ring_sum(n_gon, size_ratio, h * h, twist, "sine", 1.5)


def sine_kernel(order: int, n_gon, size_ratio, shift, twist):
    """Member ``order`` of the sine-weighted family with exponent (2*order + 3)/2.

    d/dx of member n-1 equals -(2n+1)/2 times member n.
    """
    if order < 0:
        raise InvalidArgumentError(f"order must be >= 0, got {order}")
    return ring_sum(n_gon, size_ratio, shift, twist, "sine", (2 * order + 3) / 2)


class IdentityResiduals(NamedTuple):
    cosine_even: float
    unit_even: float
    sine_odd: float

    def max(self) -> float:
        return max(self)


def check_identities(n_gon, size_ratio, layer_distance, twist) -> IdentityResiduals:
    """Absolute mismatch of the reflection identities theta -> -theta.

    The unit and cosine sums are even in the twist, the sine sum is odd.
    """
    x = layer_distance * layer_distance
    pm = np.array([twist, -twist], dtype=float)
    c = ring_sum(n_gon, size_ratio, x, pm, "cosine")
    u = ring_sum(n_gon, size_ratio, x, pm, "unit")
    s = ring_sum(n_gon, size_ratio, x, pm, "sine")
    return IdentityResiduals(
        cosine_even=float(abs(c[0] - c[1])),
        unit_even=float(abs(u[0] - u[1])),
        sine_odd=float(abs(s[0] + s[1])),
    )


def derivative_recursion_error(order: int, n_gon: int, size_ratio: float, shift: float, twist: float,
                               step: float = 1e-5) -> float:
    """Relative mismatch between a centered difference of member ``order-1`` in
    ``shift`` and ``-(2*order+1)/2`` times member ``order``."""
    if order < 1:
        raise InvalidArgumentError(f"order must be >= 1, got {order}")
    lo = max(shift - step, 0.0)
    hi = lo + 2.0 * step
    fd = (sine_kernel(order - 1, n_gon, size_ratio, hi, twist)
          - sine_kernel(order - 1, n_gon, size_ratio, lo, twist)) / (hi - lo)
    exact = -(2 * order + 1) / 2 * sine_kernel(order, n_gon, size_ratio, 0.5 * (lo + hi), twist)
    return abs(fd - exact) / abs(exact)
