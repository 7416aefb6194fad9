"""Scalar reductions of the central-configuration equations for two twisted rings.

By the N-fold rotational symmetry it is enough to balance one body per ring.
For the lower body at (1, 0) the radial, tangential and vertical components
give three scalar equations; the upper body adds a second radial one. With

    S0 = sum 1/D^{3/2},   Sc = sum cos/D^{3/2},   f = sum sin/D^{3/2},
    D_j = 1 + a^2 - 2 a cos(t_j + theta) + h^2,   A = ring_self_force(N),

the system reads

    A + b (S0 - a Sc)          = mu          (lower, radial)
    (b/a^3) A + S0 - Sc / a    = mu          (upper, radial)
    f                          = 0           (tangential)
    h S0                       = mu h/(1+b)  (vertical)

where ``mu = lambda / m`` equals U/I.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidArgumentError, NoPhysicalSolutionError, NoSolutionError
from .geometry import TwistedPairParams, canonical_twist, classify_twist
from .kernels import ring_self_force, ring_sum, tangential_force


@dataclass(frozen=True)
class ReducedResiduals:
    """Residuals of the reduced system.

    The radial entries are divided by ``mu``; ``tangential`` and ``vertical``
    are absolute.
    """

    radial_lower: float
    radial_upper: float
    tangential: float
    vertical: float
    mu: float

    def max_abs(self) -> float:
        return max(abs(self.radial_lower), abs(self.radial_upper), abs(self.tangential), abs(self.vertical))

    def as_dict(self) -> dict:
        return {
            "radial_lower": self.radial_lower,
            "radial_upper": self.radial_upper,
            "tangential": self.tangential,
            "vertical": self.vertical,
            "mu": self.mu,
        }


def _sums(params: TwistedPairParams):
    x = params.layer_distance**2
    args = (params.n_gon, params.size_ratio, x, params.twist)
    return ring_sum(*args, "unit"), ring_sum(*args, "cosine")


def multiplier(params: TwistedPairParams) -> float:
    """mu = lambda/m from U/I, written in ring coordinates."""
    n, a, b, h = params.n_gon, params.size_ratio, params.mass_ratio, params.layer_distance
    A = ring_self_force(n)
    cross = ring_sum(n, a, h * h, params.twist, "unit", 0.5)
    return ((1.0 + b * b / a) * A + b * cross) / (1.0 + b * a * a + b * h * h / (1.0 + b))


def radial_sides(params: TwistedPairParams) -> tuple[float, float]:
    """Left-hand sides of the lower and upper radial equations (each equals mu at a solution)."""
    a, b = params.size_ratio, params.mass_ratio
    A = ring_self_force(params.n_gon)
    s0, sc = _sums(params)
    return A + b * (s0 - a * sc), (b / a**3) * A + s0 - sc / a


def residuals_general(params: TwistedPairParams) -> ReducedResiduals:
    b, h = params.mass_ratio, params.layer_distance
    mu = multiplier(params)
    lower, upper = radial_sides(params)
    s0, _ = _sums(params)
    return ReducedResiduals(
        radial_lower=(lower - mu) / mu,
        radial_upper=(upper - mu) / mu,
        tangential=tangential_force(params.n_gon, params.size_ratio, h, params.twist),
        vertical=h * s0 - mu * h / (1.0 + b),
        mu=mu,
    )


def residuals_planar(params: TwistedPairParams) -> ReducedResiduals:
    if params.layer_distance != 0:
        raise InvalidArgumentError(f"planar residuals need h = 0, got {params.layer_distance}")
    mu = multiplier(params)
    lower, upper = radial_sides(params)
    return ReducedResiduals(
        radial_lower=(lower - mu) / mu,
        radial_upper=(upper - mu) / mu,
        tangential=tangential_force(params.n_gon, params.size_ratio, 0.0, params.twist),
        vertical=0.0,
        mu=mu,
    )


def residuals_spatial(params: TwistedPairParams) -> ReducedResiduals:
    """Residuals once the vertical balance fixes S0 = mu/(1+b), so the radial
    equations lose their S0 terms."""
    if not params.layer_distance > 0:
        raise InvalidArgumentError(f"spatial residuals need h > 0, got {params.layer_distance}")
    a, b = params.size_ratio, params.mass_ratio
    A = ring_self_force(params.n_gon)
    mu = multiplier(params)
    s0, sc = _sums(params)
    per_ring = mu / (1.0 + b)
    return ReducedResiduals(
        radial_lower=(A - a * b * sc - per_ring) / mu,
        radial_upper=((b / a**3) * A - sc / a - b * per_ring) / mu,
        tangential=tangential_force(params.n_gon, a, params.layer_distance, params.twist),
        vertical=s0 - per_ring,
        mu=mu,
    )


def planar_balance(n_gon: int, size_ratio, mass_ratio: float, twist: float):
    """``b * coef(a) - rhs(a)`` for coplanar rings; zero exactly at the central size ratios.

    Vectorized over ``size_ratio``.
    """
    a = np.asarray(size_ratio, dtype=float)
    A = ring_self_force(n_gon)
    s0 = ring_sum(n_gon, a, 0.0, twist, "unit")
    sc = ring_sum(n_gon, a, 0.0, twist, "cosine")
    return mass_ratio * (s0 - a * sc - A / a**3) - (s0 - sc / a - A)


def planar_mass_ratio(n_gon: int, size_ratio: float, twist: float) -> float:
    """Mass ratio b making coplanar rings (h = 0) with size ratio ``a`` central.

    ``twist`` must be 0 or pi/N modulo 2*pi/N. Equal rings (a = 1) force b = 1.
    """
    kind = classify_twist(n_gon, twist)
    theta = canonical_twist(n_gon, kind)
    a = float(size_ratio)
    if not a > 0:
        raise InvalidArgumentError(f"size_ratio must be > 0, got {a}")
    A = ring_self_force(n_gon)
    s0 = ring_sum(n_gon, a, 0.0, theta, "unit")
    sc = ring_sum(n_gon, a, 0.0, theta, "cosine")
    coef = s0 - a * sc - A / a**3
    rhs = s0 - sc / a - A
    scale = abs(s0) + abs(sc) * max(a, 1 / a) + A * max(1.0, a**-3)
    if a == 1.0:
        # coef and rhs coincide term by term
        if abs(coef) <= 1e-13 * scale:
            raise NoSolutionError("mass ratio undetermined: both sides vanish")
        return 1.0
    if abs(coef) <= 1e-13 * scale:
        raise NoSolutionError(f"no mass ratio solves the planar balance at a={a}, theta={theta}")
    b = rhs / coef
    if not b > 0:
        raise NoPhysicalSolutionError(f"planar balance needs b = {b:.6g} <= 0 at a={a}, theta={theta}")
    return b


def spatial_relations(params: TwistedPairParams) -> tuple[float, float]:
    """Residuals of the two relations left after eliminating mu for h > 0:

        b a Sc = A - S0,        b a (A/a^3 - S0) = Sc.
    """
    if not params.layer_distance > 0:
        raise InvalidArgumentError(f"spatial relations need h > 0, got {params.layer_distance}")
    classify_twist(params.n_gon, params.twist)
    a, b = params.size_ratio, params.mass_ratio
    A = ring_self_force(params.n_gon)
    s0, sc = _sums(params)
    return b * a * sc - (A - s0), b * a * (A / a**3 - s0) - sc


def spatial_compatibility(n_gon: int, size_ratio: float, layer_distance, twist: float):
    """Sc^2 - (A - S0)(A/a^3 - S0): the spatial relations with b eliminated. Vectorized over h."""
    h = np.asarray(layer_distance, dtype=float)
    a = float(size_ratio)
    A = ring_self_force(n_gon)
    s0 = ring_sum(n_gon, a, h * h, twist, "unit")
    sc = ring_sum(n_gon, a, h * h, twist, "cosine")
    return sc * sc - (A - s0) * (A / a**3 - s0)


def equal_ring_balance(n_gon: int, layer_distance, twist: float):
    """Sc + S0 - A for a = b = 1; its positive zero is the central layer distance. Vectorized over h."""
    h = np.asarray(layer_distance, dtype=float)
    A = ring_self_force(n_gon)
    s0 = ring_sum(n_gon, 1.0, h * h, twist, "unit")
    sc = ring_sum(n_gon, 1.0, h * h, twist, "cosine")
    return sc + s0 - A


def mass_ratio_from_height(n_gon: int, size_ratio: float, layer_distance: float, twist: float) -> float:
    """b = (A - S0)/(a Sc) from the first spatial relation."""
    a, h = float(size_ratio), float(layer_distance)
    A = ring_self_force(n_gon)
    s0 = ring_sum(n_gon, a, h * h, twist, "unit")
    sc = ring_sum(n_gon, a, h * h, twist, "cosine")
    if sc == 0.0:
        return math.nan
    return (A - s0) / (a * sc)
