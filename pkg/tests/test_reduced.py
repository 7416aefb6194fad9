import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from twisted_cc.errors import InvalidArgumentError, NoPhysicalSolutionError
from twisted_cc.geometry import TwistedPairParams as P, build_configuration
from twisted_cc.kernels import ring_self_force, ring_sum, tangential_force
from twisted_cc.oracle import central_residual, lambda_of
from twisted_cc.reduced import (
    multiplier,
    planar_mass_ratio,
    radial_sides,
    residuals_general,
    residuals_planar,
    residuals_spatial,
    spatial_relations,
)

SQ2 = math.sqrt(2)
TETRA = P(2, 1, 1, SQ2, math.pi / 2)
PRISM = P(2, 1, 1, 2.0, 0.0)
SQUARE = P(2, 1, 1, 0.0, math.pi / 2)


def oracle(p):
    return central_residual(build_configuration(p)).max_relative


params_st = st.builds(
    P,
    n_gon=st.integers(2, 10),
    size_ratio=st.floats(0.2, 4.0),
    mass_ratio=st.floats(0.1, 10.0),
    layer_distance=st.floats(0.0, 3.0),
    twist=st.floats(0.0, 6.3),
    base_mass=st.floats(0.5, 3.0),
).filter(lambda p: abs(p.size_ratio - 1) > 0.05 or p.layer_distance > 0.05)


@settings(max_examples=200, deadline=None)
@given(params_st)
def test_multiplier_is_potential_over_inertia(p):
    lam = lambda_of(build_configuration(p))
    assert multiplier(p) * p.base_mass == pytest.approx(lam, rel=1e-12)


@settings(max_examples=200, deadline=None)
@given(params_st)
def test_multiplier_combines_radial_equations(p):
    a, b, h = p.size_ratio, p.mass_ratio, p.layer_distance
    lower, upper = radial_sides(p)
    s0 = ring_sum(p.n_gon, a, h * h, p.twist, "unit")
    combo = (lower + b * a * a * upper + b * h * h * s0) / (1 + b * a * a + b * h * h / (1 + b))
    assert multiplier(p) == pytest.approx(combo, rel=1e-12)


@pytest.mark.parametrize("p", [TETRA, SQUARE])
def test_multiplier_examples(p):
    assert multiplier(p) == pytest.approx(lambda_of(build_configuration(p)), rel=1e-10)


def test_general_examples():
    assert residuals_general(TETRA).max_abs() < 1e-10
    assert residuals_general(P(3, 1, 1, 0, math.pi / 3)).max_abs() < 1e-10
    off = residuals_general(P(3, 2, 1, 0, math.pi / 3))
    assert abs(off.radial_lower) > 1e-3 and abs(off.radial_upper) > 1e-3
    assert oracle(P(3, 2, 1, 0, math.pi / 3)) > 1e-3


def test_planar_examples():
    for p in (SQUARE, P(4, 1, 1, 0, math.pi / 4)):
        r = residuals_planar(p)
        assert r.vertical == 0.0
        assert r.max_abs() < 1e-12
    r = residuals_planar(P(4, 1, 2, 0, math.pi / 4))
    assert abs(r.radial_lower) > 1e-3 and abs(r.radial_upper) > 1e-3
    with pytest.raises(InvalidArgumentError):
        residuals_planar(TETRA)


def test_spatial_examples():
    assert residuals_spatial(PRISM).max_abs() < 1e-10
    assert residuals_spatial(TETRA).max_abs() < 1e-10
    assert residuals_spatial(P(2, 1, 1, 1.0, 0.0)).max_abs() > 1e-3
    with pytest.raises(InvalidArgumentError):
        residuals_spatial(SQUARE)


def test_spatial_relations_examples():
    for p in (PRISM, TETRA):
        r1, r2 = spatial_relations(p)
        assert abs(r1) < 1e-10 and abs(r2) < 1e-10
    r1, r2 = spatial_relations(P(2, 1, 2, 2.0, 0.0))
    assert max(abs(r1), abs(r2)) > 1e-3


def test_prism_closed_form():
    # a = b = 1, N = 2, aligned: S0 + Sc - A = 2/h^3 - 1/4
    for h in (0.5, 1.0, 3.0):
        s0 = ring_sum(2, 1.0, h * h, 0.0, "unit")
        sc = ring_sum(2, 1.0, h * h, 0.0, "cosine")
        assert s0 + sc - ring_self_force(2) == pytest.approx(2 / h**3 - 0.25, rel=1e-14, abs=1e-15)


def test_planar_mass_ratio_equal_rings():
    assert planar_mass_ratio(2, 1.0, math.pi / 2) == 1.0
    for n in range(2, 9):
        assert planar_mass_ratio(n, 1.0, math.pi / n) == 1.0


def test_planar_mass_ratio_solution_and_reciprocal():
    n, a, th = 3, 1.2, math.pi / 3
    b = planar_mass_ratio(n, a, th)
    assert b == pytest.approx(0.97316628393705, rel=1e-10)
    assert oracle(P(n, a, b, 0, th)) < 1e-10
    assert residuals_planar(P(n, a, b, 0, th)).max_abs() < 1e-10
    # swap the rings and rescale: size 1/a, mass ratio 1/b
    assert planar_mass_ratio(n, 1 / a, th) == pytest.approx(1 / b, rel=1e-10)


def test_planar_mass_ratio_no_physical_solution():
    n, a, th = 3, 2.0, math.pi / 3
    with pytest.raises(NoPhysicalSolutionError):
        planar_mass_ratio(n, a, th)
    # the oracle agrees: no positive b gets anywhere near central
    best = min(oracle(P(n, a, b, 0, th)) for b in np.geomspace(1e-3, 1e3, 400))
    assert best > 0.1


def test_planar_mass_ratio_rejects_generic_twist():
    with pytest.raises(InvalidArgumentError):
        planar_mass_ratio(3, 1.5, 0.3)


@settings(max_examples=200, deadline=None)
@given(params_st)
def test_tangential_residual_is_tangential_force(p):
    r = residuals_general(p)
    assert r.tangential == tangential_force(p.n_gon, p.size_ratio, p.layer_distance, p.twist)
    assert r.mu > 0


@pytest.mark.parametrize("n", range(2, 11))
@pytest.mark.parametrize("a", [0.5, 1.0, 2.0])
@pytest.mark.parametrize("h", [0.0, 0.5, 1.0, 2.0])
def test_symmetric_twists_have_zero_tangential(n, a, h):
    for th in (0.0, math.pi / n):
        if a == 1.0 and h == 0.0 and th == 0.0:
            continue
        assert abs(tangential_force(n, a, h, th)) < 1e-12


@settings(max_examples=150, deadline=None)
@given(params_st)
def test_reduced_and_oracle_agree_off_solution(p):
    red = residuals_general(p).max_abs()
    orc = oracle(p)
    # generic draws are far from central by both measures, or close by both
    assert (red < 1e-10) == (orc < 1e-8)
