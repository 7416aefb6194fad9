"""Root finding and scans built on the reduced relations."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .errors import (
    BracketError,
    ConvergenceError,
    InvalidArgumentError,
    NoPhysicalSolutionError,
    NoSolutionError,
)
from .geometry import COINCIDENCE_TOL, canonical_twist, classify_twist, min_cross_distance
from .kernels import ring_self_force, ring_sum, tangential_force
from .reduced import (
    equal_ring_balance,
    mass_ratio_from_height,
    planar_balance,
    spatial_compatibility,
)

ROOT_TOL = 1e-12
ORACLE_TOL = 1e-8


@dataclass(frozen=True)
class Bracket:
    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise InvalidArgumentError(f"bracket needs lo < hi, got [{self.lo}, {self.hi}]")

    @property
    def width(self) -> float:
        return self.hi - self.lo


@dataclass(frozen=True)
class RootResult:
    value: float
    residual: float
    iterations: int
    bracket: Bracket


def find_root(
    f: Callable[[float], float],
    bracket: Bracket,
    tol: float = ROOT_TOL,
    max_iter: int = 200,
    xtol: float | None = None,
) -> RootResult:
    """Bracketed root of a continuous scalar function.

    Brent's method: inverse quadratic / secant steps, falling back to
    bisection whenever a step leaves the bracket or shrinks it too slowly, so
    convergence is guaranteed. Stops once ``|f(x)| <= tol`` or the bracket is
    narrower than ``xtol * max(1, |x|)`` (``xtol`` defaults to ``tol``).
    """
    if xtol is None:
        xtol = tol
    xpre, xcur = float(bracket.lo), float(bracket.hi)
    fpre, fcur = float(f(xpre)), float(f(xcur))
    if fpre == 0.0:
        return RootResult(xpre, 0.0, 0, bracket)
    if fcur == 0.0:
        return RootResult(xcur, 0.0, 0, bracket)
    if math.isnan(fpre) or math.isnan(fcur) or (fpre > 0) == (fcur > 0):
        raise BracketError(f"no sign change on [{xpre}, {xcur}]: f = {fpre:.3e}, {fcur:.3e}")

    xblk, fblk = 0.0, 0.0
    spre = scur = 0.0
    for it in range(1, max_iter + 1):
        if (fpre > 0) != (fcur > 0):
            xblk, fblk = xpre, fpre
            spre = scur = xcur - xpre
        if abs(fblk) < abs(fcur):
            xpre, xcur, xblk = xcur, xblk, xcur
            fpre, fcur, fblk = fcur, fblk, fcur

        delta = 0.5 * xtol * max(1.0, abs(xcur))
        sbis = 0.5 * (xblk - xcur)
        if fcur == 0.0 or abs(fcur) <= tol or abs(sbis) <= delta:
            lo, hi = sorted((xcur, xblk))
            return RootResult(xcur, abs(fcur), it, Bracket(lo, hi) if lo < hi else bracket)

        if abs(spre) > delta and abs(fcur) < abs(fpre):
            if xpre == xblk:
                den = fcur - fpre
                stry = -fcur * (xcur - xpre) / den if den != 0.0 else math.inf
            else:
                dpre = (fpre - fcur) / (xpre - xcur)
                dblk = (fblk - fcur) / (xblk - xcur)
                den = dblk * dpre * (fblk - fpre)
                # flat or underflowed samples: no usable interpolant, bisect instead
                stry = -fcur * (fblk * dblk - fpre * dpre) / den if den != 0.0 else math.inf
            if math.isfinite(stry) and 2.0 * abs(stry) < min(abs(spre), 3.0 * abs(sbis) - delta):
                spre, scur = scur, stry
            else:
                spre = scur = sbis
        else:
            spre = scur = sbis

        xpre, fpre = xcur, fcur
        xcur += scur if abs(scur) > delta else math.copysign(delta, sbis)
        fcur = float(f(xcur))
    raise ConvergenceError(f"no convergence within {max_iter} iterations on {bracket}")


def _sign_changes(values: np.ndarray) -> np.ndarray:
    """Indices i with values[i] and values[i+1] strictly of opposite sign."""
    v = np.asarray(values)
    return np.nonzero(np.sign(v[:-1]) * np.sign(v[1:]) < 0)[0]


def solve_h_equal(n_gon: int, twist: float, tol: float = ROOT_TOL) -> RootResult:
    """Layer distance h making two equal rings (a = b = 1) central.

    The balance g(h) = Sc + S0 - A decreases strictly on h > 0 and tends to
    -A, while its h -> 0 limit is positive, so there is exactly one root.
    """
    theta = canonical_twist(n_gon, classify_twist(n_gon, twist))

    def g(h):
        return float(equal_ring_balance(n_gon, h, theta))

    lo, hi = 1e-3, 1.0
    if not g(lo) > 0:
        raise ConvergenceError(f"g({lo}) = {g(lo):.3e} is not positive for N={n_gon}")
    while g(hi) >= 0:
        lo, hi = hi, 2.0 * hi
        if hi > 1e6:
            raise ConvergenceError(f"no sign change of g below h = 1e6 for N={n_gon}")
    return find_root(g, Bracket(lo, hi), tol=tol)


@dataclass(frozen=True)
class SpatialSolution:
    mass_ratio: float
    layer_distance: float
    root: RootResult
    candidates: int = 1
    note: str = ""


def solve_spatial_pair(
    n_gon: int,
    size_ratio: float,
    twist: float,
    tol: float = ROOT_TOL,
    h_range: tuple[float, float] = (1e-3, 1e3),
    samples: int = 600,
) -> SpatialSolution:
    """Solve for (b, h) such that rings of size ratio ``a`` at h > 0 are central.

    b is eliminated from the two spatial relations; the remaining equation in h
    is scanned on a log grid, each sign change refined, and b recovered. Roots
    giving b <= 0 are discarded. If several physical roots exist the smallest
    h is returned and ``candidates`` counts them.
    """
    theta = canonical_twist(n_gon, classify_twist(n_gon, twist))
    a = float(size_ratio)
    if not a > 0:
        raise InvalidArgumentError(f"size_ratio must be > 0, got {a}")
    hs = np.geomspace(h_range[0], h_range[1], samples)
    A = ring_self_force(n_gon)
    s0 = ring_sum(n_gon, a, hs * hs, theta, "unit")
    sc = ring_sum(n_gon, a, hs * hs, theta, "cosine")

    if np.max(np.abs(sc)) <= 1e-12 * np.max(s0):
        # The cosine sum vanishes for every h (N = 2 at a quarter turn): the
        # relations reduce to S0 = A = A/a^3 and leave b free.
        if abs(a - 1.0) > 1e-12:
            raise NoSolutionError(f"cosine sum vanishes identically; needs a = 1, got a = {a}")
        root = find_root(
            lambda h: float(ring_sum(n_gon, 1.0, h * h, theta, "unit")) - A,
            _first_bracket(hs, s0 - A),
            tol=tol,
        )
        return SpatialSolution(1.0, root.value, root, note="mass ratio undetermined; b = 1 chosen")

    comp = sc * sc - (A - s0) * (A / a**3 - s0)
    idx = _sign_changes(comp)
    if len(idx) == 0:
        raise NoSolutionError(f"compatibility has no sign change on h in {h_range} for N={n_gon}, a={a}")
    found = []
    for i in idx:
        root = find_root(
            lambda h: float(spatial_compatibility(n_gon, a, h, theta)),
            Bracket(float(hs[i]), float(hs[i + 1])),
            tol=0.0,
            xtol=4e-16,
        )
        b = mass_ratio_from_height(n_gon, a, root.value, theta)
        if math.isfinite(b) and b > 0:
            found.append((root, b))
    if not found:
        raise NoPhysicalSolutionError(f"every compatible h gives b <= 0 for N={n_gon}, a={a}")
    root, b = found[0]
    return SpatialSolution(b, root.value, root, candidates=len(found))


def _first_bracket(xs, values) -> Bracket:
    idx = _sign_changes(values)
    if len(idx) == 0:
        raise NoSolutionError("no sign change on the scan grid")
    i = int(idx[0])
    return Bracket(float(xs[i]), float(xs[i + 1]))


@dataclass(frozen=True)
class ThetaScanReport:
    thetas: np.ndarray
    values: np.ndarray
    min_positive: float
    zeros_found: list[float] = field(default_factory=list)
    excluded: int = 0

    @property
    def samples(self) -> list[tuple[float, float]]:
        return list(zip(self.thetas.tolist(), self.values.tolist()))


def scan_theta(n_gon: int, size_ratio: float, layer_distance: float, grid_size: int = 1000) -> ThetaScanReport:
    """Sample the tangential force over one period (0, 2*pi/N) and locate its zeros.

    Samples sit at cell midpoints, so theta = 0 itself is never evaluated;
    the zero there shows up as the sign change across the periodic wrap. When
    the rings can touch (a = 1, h = 0) that wrap is a pole, not a zero, and
    is skipped.
    """
    if grid_size < 16:
        raise InvalidArgumentError(f"grid_size must be >= 16, got {grid_size}")
    period = 2.0 * math.pi / n_gon
    thetas = (np.arange(grid_size) + 0.5) * (period / grid_size)
    phi = thetas[:, None] + 2.0 * math.pi * np.arange(1, n_gon + 1) / n_gon
    d2 = 1.0 + size_ratio**2 - 2.0 * size_ratio * np.cos(phi) + layer_distance**2
    keep = d2.min(axis=1) >= COINCIDENCE_TOL**2
    thetas = thetas[keep]
    values = np.asarray(tangential_force(n_gon, size_ratio, layer_distance, thetas))

    def f(t):
        return float(tangential_force(n_gon, size_ratio, layer_distance, t))

    zeros = [float(t) for t, v in zip(thetas, values) if v == 0.0]
    for i in _sign_changes(values):
        r = find_root(f, Bracket(float(thetas[i]), float(thetas[i + 1])), tol=0.0, xtol=1e-14)
        zeros.append(r.value)
    touching = min_cross_distance(n_gon, size_ratio, layer_distance, 0.0) < COINCIDENCE_TOL
    if not touching and values[-1] * values[0] < 0:
        r = find_root(f, Bracket(float(thetas[-1]) - period, float(thetas[0])), tol=0.0, xtol=1e-14)
        zeros.append(r.value if abs(r.value) > 1e-15 else 0.0)
    zeros.sort()
    inside = thetas < math.pi / n_gon
    min_pos = float(values[inside].min()) if inside.any() else math.nan
    return ThetaScanReport(thetas, values, min_pos, zeros, excluded=int((~keep).sum()))


def default_a_grid(points: int = 10_000, lo: float = 0.01, hi: float = 100.0, exclusion: float = 0.01) -> np.ndarray:
    grid = np.exp(np.linspace(math.log(lo), math.log(hi), points))
    return grid[np.abs(grid - 1.0) >= exclusion]


def scan_planar_a(
    n_gon: int,
    mass_ratio: float,
    twist: float = 0.0,
    a_grid=None,
    tol: float = ROOT_TOL,
) -> list[RootResult]:
    """All size ratios a at which coplanar rings with mass ratio b are central.

    The grid is split at a = 1, where the aligned balance has a pole, and sign
    changes are only counted within each side.
    """
    theta = canonical_twist(n_gon, classify_twist(n_gon, twist))
    grid = default_a_grid() if a_grid is None else np.sort(np.asarray(a_grid, dtype=float))
    values = planar_balance(n_gon, grid, mass_ratio, theta)

    def F(a):
        return float(planar_balance(n_gon, a, mass_ratio, theta))

    roots = []
    for side in (grid < 1.0, grid > 1.0):
        xs, vs = grid[side], values[side]
        for i in _sign_changes(vs):
            roots.append(find_root(F, Bracket(float(xs[i]), float(xs[i + 1])), tol=tol, xtol=1e-15))
    return sorted(roots, key=lambda r: r.value)


def planar_profile(n_gon: int, mass_ratio: float, twist: float = 0.0, a_grid=None):
    """(a, balance) samples behind :func:`scan_planar_a`, for export."""
    theta = canonical_twist(n_gon, classify_twist(n_gon, twist))
    grid = default_a_grid() if a_grid is None else np.sort(np.asarray(a_grid, dtype=float))
    return grid, planar_balance(n_gon, grid, mass_ratio, theta)


def zero_height_margin(n_gon: int) -> float:
    """Limit of the equal-ring balance as h -> 0 for the staggered twist pi/N.

    Positive for every N, which is what makes the staggered equal-ring root exist.
    """
    if n_gon < 2:
        raise InvalidArgumentError(f"n_gon must be >= 2, got {n_gon}")
    terms = []
    for j in range(1, n_gon + 1):
        c = math.cos(2.0 * math.pi * j / n_gon + math.pi / n_gon)
        terms.append((c + 1.0) / (2.0 - 2.0 * c) ** 1.5)
    return math.fsum(terms) - ring_self_force(n_gon)
