"""Direct check of the central-configuration equations.

Nothing here knows about rings, twists or reduced systems: the residual of

    sum_{j != k} m_j m_k (q_j - q_k) / |q_j - q_k|^3 + lambda m_k q_k = 0,
    lambda = U / I,

is evaluated body by body from raw positions and masses. Every reduction in
the package is tested against this module.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateConfigurationError, InvalidArgumentError
from .geometry import COINCIDENCE_TOL, Configuration
from .summation import compensated_sum

CENTERING_TOL = 1e-9
_EPS_GUARD = 1e-300


@dataclass(frozen=True)
class ResidualReport:
    lam: float
    per_body: np.ndarray
    max_relative: float


def _separations(config: Configuration):
    pos = config.positions
    diff = pos[None, :, :] - pos[:, None, :]  # diff[k, j] = q_j - q_k
    dist = np.sqrt(np.einsum("kjc,kjc->kj", diff, diff))
    n = len(config)
    off = ~np.eye(n, dtype=bool)
    if n > 1 and dist[off].min() < COINCIDENCE_TOL:
        raise DegenerateConfigurationError(f"bodies coincide (min separation {dist[off].min():.3e})")
    return diff, dist


def potential_U(config: Configuration) -> float:
    """Newtonian force function sum_{j<k} m_j m_k / |q_j - q_k|."""
    _, dist = _separations(config)
    m = config.masses
    iu = np.triu_indices(len(config), k=1)
    return math.fsum((m[iu[0]] * m[iu[1]] / dist[iu]).tolist())


def moment_I(config: Configuration) -> float:
    """Moment of inertia about the origin, sum_j m_j |q_j|^2."""
    pos = config.positions
    return math.fsum((config.masses * np.einsum("jc,jc->j", pos, pos)).tolist())


def lambda_of(config: Configuration) -> float:
    return potential_U(config) / moment_I(config)


def central_residual(config: Configuration) -> ResidualReport:
    """Per-body residual of the central-configuration equation.

    ``max_relative`` normalizes body k by the centripetal term
    ``lambda m_k |q_k|`` so it is independent of length and mass scale.
    """
    com = config.center_of_mass()
    if np.linalg.norm(com) > CENTERING_TOL:
        raise InvalidArgumentError(f"configuration is not centered (center of mass {com})")
    diff, dist = _separations(config)
    m = config.masses
    n = len(config)
    with np.errstate(divide="ignore", invalid="ignore"):
        inv3 = np.where(np.eye(n, dtype=bool), 0.0, 1.0 / dist**3)
    # pair terms, shape (k, j, 3), accumulated over j in index order
    pair = (m[:, None] * m[None, :] * inv3)[:, :, None] * diff
    forces = np.stack([compensated_sum(pair[:, :, c], axis=1) for c in range(3)], axis=1)
    lam = lambda_of(config)
    residual = forces + lam * m[:, None] * config.positions
    scale = lam * m * np.linalg.norm(config.positions, axis=1) + _EPS_GUARD
    rel = np.linalg.norm(residual, axis=1) / scale
    return ResidualReport(lam=lam, per_body=residual, max_relative=float(rel.max()))


def is_central(config: Configuration, tol: float = 1e-8) -> bool:
    if not 0 < tol < 1:
        raise InvalidArgumentError(f"tol must lie in (0, 1), got {tol}")
    return central_residual(config).max_relative < tol
