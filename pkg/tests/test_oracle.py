import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import regular_tetrahedron
from twisted_cc.errors import DegenerateConfigurationError, InvalidArgumentError
from twisted_cc.geometry import Configuration, TwistedPairParams, build_configuration, regular_polygon
from twisted_cc.oracle import central_residual, is_central, lambda_of, moment_I, potential_U


def pair():
    return Configuration([[1, 0, 0], [-1, 0, 0]], [1, 1])


def test_potential_hand_values():
    assert potential_U(pair()) == 0.5
    s = 1.3
    sq = Configuration([[0, 0, 0], [s, 0, 0], [s, s, 0], [0, s, 0]], [1] * 4)
    assert potential_U(sq) == pytest.approx(4 / s + 2 / (s * math.sqrt(2)), rel=1e-15)
    assert potential_U(regular_tetrahedron(edge=2.0)) == pytest.approx(3.0, rel=1e-15)


def test_potential_rejects_collision():
    with pytest.raises(DegenerateConfigurationError):
        potential_U(Configuration([[1, 0, 0], [1, 0, 0]], [1, 1]))


def test_moment_hand_values():
    assert moment_I(pair()) == 2
    for n in (3, 7):
        assert moment_I(regular_polygon(n)) == pytest.approx(n, rel=1e-15)
        assert moment_I(regular_polygon(n, radius=2.5)) == pytest.approx(2.5**2 * n, rel=1e-15)


def test_lambda_hand_values():
    assert lambda_of(pair()) == 0.25
    assert central_residual(pair()).max_relative < 1e-15
    tri = regular_polygon(3)
    assert potential_U(tri) == pytest.approx(math.sqrt(3), rel=1e-15)
    assert lambda_of(tri) == pytest.approx(1 / math.sqrt(3), rel=1e-15)


def test_lambda_scaling():
    cfg = build_configuration(TwistedPairParams(4, 0.6, 1.7, 0.4, 0.25))
    c = 3.7
    assert lambda_of(cfg.transformed(scale=c)) == pytest.approx(lambda_of(cfg) * c**-3, rel=1e-13)


@pytest.mark.parametrize("n", range(3, 9))
def test_regular_polygons_central(n):
    assert central_residual(regular_polygon(n)).max_relative < 1e-12


def test_square_from_params_central():
    cfg = build_configuration(TwistedPairParams(2, 1, 1, 0, math.pi / 2))
    assert central_residual(cfg).max_relative < 1e-12


def test_displaced_vertex_not_central():
    pos = regular_polygon(4).positions.copy()
    pos[0, 0] += 0.1
    cfg = Configuration(pos, [1] * 4).recentered()
    assert central_residual(cfg).max_relative > 1e-3


def test_uncentered_rejected():
    cfg = Configuration(regular_polygon(4).positions + [0.1, 0, 0], [1] * 4)
    with pytest.raises(InvalidArgumentError):
        central_residual(cfg)


def test_is_central_hexagon_and_tetrahedron():
    assert is_central(regular_polygon(6), 1e-9)
    pos = regular_polygon(6).positions.copy()
    pos[2] *= 1.05
    assert not is_central(Configuration(pos, [1] * 6).recentered(), 1e-9)
    tet = build_configuration(TwistedPairParams(2, 1, 1, math.sqrt(2), math.pi / 2))
    d = tet.pairwise_distances()[np.triu_indices(4, 1)]
    assert np.allclose(d, 2, atol=1e-15)
    assert is_central(tet, 1e-9)
    # any masses on a regular simplex
    assert is_central(regular_tetrahedron(masses=(1, 2, 3, 4)), 1e-12)


def test_is_central_tol_domain():
    with pytest.raises(InvalidArgumentError):
        is_central(regular_polygon(3), 1.0)


def _rotation(rng):
    q, _ = np.linalg.qr(rng.normal(size=(3, 3)))
    return q


config_st = st.builds(
    TwistedPairParams,
    n_gon=st.integers(2, 10),
    size_ratio=st.floats(0.2, 4.0),
    mass_ratio=st.floats(0.1, 10.0),
    layer_distance=st.floats(0.0, 3.0),
    twist=st.floats(0.05, 1.0),
)


@settings(max_examples=100, deadline=None)
@given(config_st, st.integers(0, 2**32 - 1), st.floats(0.1, 10.0))
def test_orthogonal_and_scale_invariance(p, seed, c):
    cfg = build_configuration(p)
    base = central_residual(cfg)
    q = _rotation(np.random.default_rng(seed))
    rotated = central_residual(cfg.transformed(q))
    assert rotated.max_relative == pytest.approx(base.max_relative, rel=1e-9, abs=1e-12)
    scaled = central_residual(cfg.transformed(scale=c))
    assert scaled.lam == pytest.approx(base.lam * c**-3, rel=1e-12)
    assert scaled.max_relative == pytest.approx(base.max_relative, rel=1e-9, abs=1e-12)


@settings(max_examples=100, deadline=None)
@given(config_st)
def test_total_residual_vanishes(p):
    cfg = build_configuration(p)
    rep = central_residual(cfg)
    total = rep.per_body.sum(axis=0)
    scale = np.linalg.norm(rep.per_body, axis=1).sum() + rep.lam * cfg.total_mass
    assert np.linalg.norm(total) < 1e-12 * scale
    assert len(rep.per_body) == len(cfg)
    assert rep.lam > 0
