import math

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flexilab.errors import CoarsePathError, NotRealizableError, OnSurfaceError
from flexilab.families import rational_family
from flexilab.geomkit import Euclidean, Polyhedron, Sphere
from flexilab.shapes import blob, cube, regular_octahedron, spherical_tetrahedron
from flexilab.volumetrics import (
    WindingField,
    bellows_report,
    bipyramid_diagonal_range,
    bipyramid_family,
    cap_volume,
    generalized_volume_euclidean,
    monte_carlo_volume,
    schlafli_variation,
    spherical_flexible_quadrilateral,
    spherical_triangle_area,
    suspension_s3,
    winding_number,
    winding_numbers,
    wrap_sphere,
)


def test_cone_sum_of_solids():
    assert generalized_volume_euclidean(cube(2.0)) == pytest.approx(8.0)
    assert generalized_volume_euclidean(regular_octahedron()) == pytest.approx(4 / 3)


def test_reversal_negates_volume():
    P = blob()
    R = Polyhedron(P.K.reversed(), P.coords, P.space)
    assert generalized_volume_euclidean(R) == pytest.approx(-generalized_volume_euclidean(P))


@given(st.floats(-5, 5), st.floats(-5, 5), st.floats(-5, 5), st.integers(0, 10 ** 6))
def test_volume_invariant_under_rigid_motions(tx, ty, tz, seed):
    P = blob(levels=1)
    Q, _ = np.linalg.qr(np.random.default_rng(seed).normal(size=(3, 3)))
    if np.linalg.det(Q) < 0:
        Q[:, 0] *= -1
    moved = Polyhedron(P.K, P.coords @ Q.T + [tx, ty, tz], P.space)
    assert generalized_volume_euclidean(moved) == pytest.approx(generalized_volume_euclidean(P), rel=1e-10)


def test_winding_numbers_basic():
    P = cube()
    assert winding_number(P.space, P, [0.5, 0.5, 0.5]) == 1
    assert winding_number(P.space, P, [2.0, 0.5, 0.5]) == 0
    R = Polyhedron(P.K.reversed(), P.coords, P.space)
    assert winding_number(R.space, R, [0.5, 0.5, 0.5]) == -1
    with pytest.raises(OnSurfaceError):
        winding_number(P.space, P, [0.0, 0.5, 0.5])


def test_winding_independent_of_ray_direction():
    P = blob()
    X = np.random.default_rng(0).uniform(-1.5, 1.5, size=(300, 3))
    results = [winding_numbers(P, X, rng=s) for s in range(20)]
    assert all(np.array_equal(results[0], r) for r in results[1:])


def test_self_intersecting_winding_takes_several_values(rational_specs):
    P = rational_family(rational_specs[3]).evaluate(1.0)
    X = np.random.default_rng(1).uniform(-2, 2, size=(20000, 3))
    w = WindingField(P)(X)
    assert len(set(w.tolist())) >= 2


def test_monte_carlo_matches_cone_sum():
    for P in (cube(), regular_octahedron()):
        est, se = monte_carlo_volume(P.space, P, N=100_000, seed=3)
        assert abs(est - generalized_volume_euclidean(P)) < 4 * se + 1e-12


def test_monte_carlo_is_deterministic(monkeypatch):
    P = regular_octahedron()
    a = monte_carlo_volume(P.space, P, N=20_000, seed=9)
    monkeypatch.setenv("FLEXILAB_THREADS", "1")
    b = monte_carlo_volume(P.space, P, N=20_000, seed=9)
    assert a == b


def test_cap_volume():
    assert cap_volume(2, math.pi) == pytest.approx(4 * math.pi)
    assert cap_volume(3, math.pi) == pytest.approx(Sphere(3).sigma)


def test_small_spherical_tetrahedron():
    P = spherical_tetrahedron(edge=0.1)
    est, se = monte_carlo_volume(P.space, P, N=200_000, seed=0)
    chord = np.sqrt(2) / 12 * 0.1 ** 3
    assert abs(est - chord) < 4 * se + 1e-3 * chord


def test_wrap_sphere():
    s = Sphere(3).sigma
    assert wrap_sphere(s + 0.1, s) == pytest.approx(0.1)
    assert wrap_sphere(-0.1 - s, s) == pytest.approx(-0.1)


def test_spherical_quadrilateral():
    d = 0.8
    pts, area = spherical_flexible_quadrilateral([0.6] * 4, d)
    P = pts[:, 1:]
    assert np.allclose(np.arccos(np.clip([P[i] @ P[(i + 1) % 4] for i in range(4)], -1, 1)), 0.6)
    assert area == pytest.approx(2 * spherical_triangle_area(0.6, 0.6, d), rel=1e-12)
    with pytest.raises(NotRealizableError):
        spherical_flexible_quadrilateral([0.6] * 4, 1.3)


def test_bipyramid_volume_is_half_pi_area():
    lo, hi = bipyramid_diagonal_range()
    d = 0.5 * (lo + hi)
    pts, area = spherical_flexible_quadrilateral([0.6] * 4, d)
    P = suspension_s3(pts)
    est, se = monte_carlo_volume(P.space, P, N=200_000, seed=1)
    assert abs(est - math.pi / 2 * area) < 4 * se


def test_schlafli_on_bipyramid():
    fam = bipyramid_family()
    res = schlafli_variation(fam.space, fam)
    lo, hi = fam.interval
    dA = fam.meta["area"](hi) - fam.meta["area"](lo)
    assert res.delta_V == pytest.approx(math.pi / 2 * dA, abs=1e-4)
    with pytest.raises(CoarsePathError):
        schlafli_variation(fam.space, fam.sample(np.linspace(lo, hi, 3)))


def test_bellows_reports(rational_specs):
    fam = rational_family(rational_specs[3])
    rep = bellows_report(fam)
    assert rep.verdict == "constant" and rep.method == "cone-sum"
    lines = rep.to_csv().splitlines()
    assert lines[0] == "u,V,edge_dev" and len(lines) == 82


def test_bipyramid_bellows_fails():
    fam = bipyramid_family()
    rep = bellows_report(fam, np.linspace(*fam.interval, 5), N=50_000)
    assert rep.verdict == "non-constant"


def test_winding_needs_matching_space():
    P = cube()
    with pytest.raises(ValueError):
        winding_number(Euclidean(2), P, [0.5, 0.5])
