"""Two parallel, coaxial regular N-gons of point masses.

The lower ring has unit circumradius and bodies of mass ``m``; the upper ring
has circumradius ``a``, bodies of mass ``b*m``, sits ``h`` above the lower one
and is rotated by the twist ``theta``. Units are G = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import DegenerateConfigurationError, InvalidArgumentError

COINCIDENCE_TOL = 1e-9


def vertex_angle(n_gon: int, j: int) -> float:
    """Polar angle 2*pi*j/N of vertex ``j`` (1-based, so j = N sits at angle 2*pi)."""
    if n_gon < 2:
        raise InvalidArgumentError(f"n_gon must be >= 2, got {n_gon}")
    if not 1 <= j <= n_gon:
        raise InvalidArgumentError(f"vertex index {j} outside 1..{n_gon}")
    return 2.0 * math.pi * j / n_gon


def vertex_angles(n_gon: int) -> np.ndarray:
    """All N vertex angles, in the same order and rounding as :func:`vertex_angle`."""
    if n_gon < 2:
        raise InvalidArgumentError(f"n_gon must be >= 2, got {n_gon}")
    return 2.0 * math.pi * np.arange(1, n_gon + 1) / n_gon


def min_cross_distance(n_gon: int, size_ratio: float, layer_distance: float, twist: float) -> float:
    """Smallest distance between a lower-ring body and an upper-ring body."""
    phi = vertex_angles(n_gon) + twist
    d2 = 1.0 + size_ratio**2 - 2.0 * size_ratio * np.cos(phi) + layer_distance**2
    return float(np.sqrt(np.maximum(d2, 0.0).min()))


@dataclass(frozen=True)
class TwistedPairParams:
    """Parameters (N, a, b, h, theta) of a twisted two-ring configuration."""

    n_gon: int
    size_ratio: float
    mass_ratio: float
    layer_distance: float
    twist: float
    base_mass: float = 1.0

    def __post_init__(self):
        if int(self.n_gon) != self.n_gon or self.n_gon < 2:
            raise InvalidArgumentError(f"n_gon must be an integer >= 2, got {self.n_gon}")
        object.__setattr__(self, "n_gon", int(self.n_gon))
        for name in ("size_ratio", "mass_ratio", "layer_distance", "twist", "base_mass"):
            value = float(getattr(self, name))
            if not math.isfinite(value):
                raise InvalidArgumentError(f"{name} must be finite, got {value}")
            object.__setattr__(self, name, value)
        if self.size_ratio <= 0:
            raise InvalidArgumentError(f"size_ratio must be > 0, got {self.size_ratio}")
        if self.mass_ratio <= 0:
            raise InvalidArgumentError(f"mass_ratio must be > 0, got {self.mass_ratio}")
        if self.layer_distance < 0:
            raise InvalidArgumentError(f"layer_distance must be >= 0, got {self.layer_distance}")
        if self.base_mass <= 0:
            raise InvalidArgumentError(f"base_mass must be > 0, got {self.base_mass}")
        gap = min_cross_distance(self.n_gon, self.size_ratio, self.layer_distance, self.twist)
        if gap < COINCIDENCE_TOL:
            raise DegenerateConfigurationError(
                f"rings touch: min lower/upper distance {gap:.3e} for {self}"
            )

    def replace(self, **changes) -> "TwistedPairParams":
        fields = dict(
            n_gon=self.n_gon,
            size_ratio=self.size_ratio,
            mass_ratio=self.mass_ratio,
            layer_distance=self.layer_distance,
            twist=self.twist,
            base_mass=self.base_mass,
        )
        fields.update(changes)
        return TwistedPairParams(**fields)

    def as_dict(self) -> dict:
        return {
            "n_gon": self.n_gon,
            "size_ratio": self.size_ratio,
            "mass_ratio": self.mass_ratio,
            "layer_distance": self.layer_distance,
            "twist": self.twist,
            "base_mass": self.base_mass,
        }


@dataclass(frozen=True)
class PointMass:
    position: tuple[float, float, float]
    mass: float

    def __post_init__(self):
        if not self.mass > 0:
            raise InvalidArgumentError(f"mass must be > 0, got {self.mass}")
        if len(self.position) != 3 or not all(math.isfinite(c) for c in self.position):
            raise InvalidArgumentError(f"position must be a finite 3-vector, got {self.position}")


class Configuration:
    """An ordered set of point masses stored as ``(n, 3)`` positions and ``(n,)`` masses.

    Construction only checks masses and finiteness; centering and collisions
    are checked by the consumers that need them (see :mod:`twisted_cc.oracle`),
    so perturbed or off-center test configurations can still be represented.
    """

    __slots__ = ("_positions", "_masses")

    def __init__(self, positions, masses):
        pos = np.array(positions, dtype=float)
        m = np.array(masses, dtype=float)
        if pos.ndim != 2 or pos.shape[1] != 3:
            raise InvalidArgumentError(f"positions must have shape (n, 3), got {pos.shape}")
        if m.shape != (pos.shape[0],):
            raise InvalidArgumentError(f"need one mass per body, got {m.shape} for {pos.shape[0]} bodies")
        if not np.all(np.isfinite(pos)):
            raise InvalidArgumentError("positions must be finite")
        if not np.all(m > 0):
            raise InvalidArgumentError("masses must be positive")
        pos.setflags(write=False)
        m.setflags(write=False)
        self._positions = pos
        self._masses = m

    @classmethod
    def from_bodies(cls, bodies) -> "Configuration":
        bodies = list(bodies)
        return cls([b.position for b in bodies], [b.mass for b in bodies])

    @property
    def positions(self) -> np.ndarray:
        return self._positions

    @property
    def masses(self) -> np.ndarray:
        return self._masses

    @property
    def bodies(self) -> list[PointMass]:
        return [PointMass(tuple(map(float, p)), float(m)) for p, m in zip(self._positions, self._masses)]

    def __len__(self) -> int:
        return len(self._masses)

    def __iter__(self) -> Iterator[PointMass]:
        return iter(self.bodies)

    def __repr__(self) -> str:
        return f"Configuration(n={len(self)}, total_mass={self.total_mass:g})"

    @property
    def total_mass(self) -> float:
        return float(self._masses.sum())

    def center_of_mass(self) -> np.ndarray:
        return (self._masses[:, None] * self._positions).sum(axis=0) / self.total_mass

    def recentered(self) -> "Configuration":
        return Configuration(self._positions - self.center_of_mass(), self._masses)

    def transformed(self, matrix=None, scale: float = 1.0) -> "Configuration":
        """Apply ``x -> scale * matrix @ x`` to every position."""
        pos = self._positions if matrix is None else self._positions @ np.asarray(matrix, dtype=float).T
        return Configuration(scale * pos, self._masses)

    def pairwise_distances(self) -> np.ndarray:
        diff = self._positions[:, None, :] - self._positions[None, :, :]
        return np.sqrt(np.einsum("ijk,ijk->ij", diff, diff))

    def min_separation(self) -> float:
        d = self.pairwise_distances()
        if len(self) < 2:
            return math.inf
        return float(d[np.triu_indices(len(self), k=1)].min())


def build_configuration(params: TwistedPairParams) -> Configuration:
    """Place the 2N bodies with the center of mass at the origin.

    Lower body k sits at (cos t_k, sin t_k, -b h/(1+b)) with mass m; upper body
    k at (a cos(t_k + theta), a sin(t_k + theta), h/(1+b)) with mass b m.
    """
    n, a, b, h = params.n_gon, params.size_ratio, params.mass_ratio, params.layer_distance
    t = vertex_angles(n)
    z_low = -b * h / (1.0 + b)
    z_up = h / (1.0 + b)
    lower = np.column_stack([np.cos(t), np.sin(t), np.full(n, z_low)])
    upper = np.column_stack([a * np.cos(t + params.twist), a * np.sin(t + params.twist), np.full(n, z_up)])
    masses = np.concatenate([np.full(n, params.base_mass), np.full(n, b * params.base_mass)])
    config = Configuration(np.vstack([lower, upper]), masses)
    if config.min_separation() < COINCIDENCE_TOL:
        raise DegenerateConfigurationError(f"coincident bodies for {params}")
    return config


def regular_polygon(n: int, radius: float = 1.0, mass: float = 1.0) -> Configuration:
    """Single planar regular n-gon centered at the origin."""
    if n < 2:
        raise InvalidArgumentError(f"need at least 2 vertices, got {n}")
    t = vertex_angles(n)
    pos = np.column_stack([radius * np.cos(t), radius * np.sin(t), np.zeros(n)])
    return Configuration(pos, np.full(n, mass))


SYMMETRY_TOL = 1e-9


def reduce_twist(n_gon: int, twist: float) -> float:
    """Map ``twist`` into the fundamental domain [0, 2*pi/N)."""
    period = 2.0 * math.pi / n_gon
    r = math.fmod(twist, period)
    if r < 0:
        r += period
    if period - r < SYMMETRY_TOL:
        r = 0.0
    return r


def classify_twist(n_gon: int, twist: float) -> str:
    """Return ``"aligned"`` (theta = 0) or ``"staggered"`` (theta = pi/N) modulo 2*pi/N.

    Any other twist leaves a nonzero tangential force, so no central
    configuration exists there and :class:`InvalidArgumentError` is raised.
    """
    r = reduce_twist(n_gon, twist)
    if abs(r) < SYMMETRY_TOL:
        return "aligned"
    if abs(r - math.pi / n_gon) < SYMMETRY_TOL:
        return "staggered"
    raise InvalidArgumentError(
        f"twist {twist!r} is neither 0 nor pi/{n_gon} modulo 2*pi/{n_gon}; "
        "only those twists can be central"
    )


def canonical_twist(n_gon: int, kind: str) -> float:
    if kind == "aligned":
        return 0.0
    if kind == "staggered":
        return math.pi / n_gon
    raise InvalidArgumentError(f"unknown twist kind {kind!r}")
