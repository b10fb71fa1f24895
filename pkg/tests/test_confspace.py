import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from flexilab.complexes import Involution, antipodal_involution, cross_polytope_complex
from flexilab.confspace import (
    build_constraint_system,
    degeneracy_flags,
    evaluate,
    finite_difference_jacobian,
    lengths_from_polyhedron,
    nearest_family_parameter,
    residual,
    rigidity_test,
    solve_reduced,
    symmetric_seed,
    symmetry_reduce,
    track_flex,
    track_plane_symmetric_octahedron,
)
from flexilab.errors import (
    MissingLengthError,
    NotOnVarietyError,
    RigidError,
    SymmetryMismatchError,
)
from flexilab.families import elliptic_family
from flexilab.geomkit import Euclidean, Hyperbolic, Polyhedron, Sphere
from flexilab.shapes import regular_octahedron


def octa_in(space, scale=0.3, seed=0):
    rng = np.random.default_rng(seed)
    base = np.vstack([np.eye(3), -np.eye(3)]) * scale + rng.normal(scale=0.03 * scale, size=(6, 3))
    if space.kind == "euclid":
        X = base
    elif space.kind == "sphere":
        X = np.hstack([np.ones((6, 1)), base])
        X /= np.linalg.norm(X, axis=1)[:, None]
    else:
        X = np.hstack([np.sqrt(1 + np.sum(base ** 2, axis=1))[:, None], base])
    return Polyhedron(cross_polytope_complex(3), X, space)


@pytest.mark.parametrize("space", [Euclidean(3), Sphere(3), Hyperbolic(3)])
def test_counts_octahedron(space):
    P = octa_in(space)
    sys = build_constraint_system(P.K, lengths_from_polyhedron(P), space)
    want = 9 if space.kind == "euclid" else 12
    assert (sys.n_vars, sys.n_eqs) == (want, want)
    assert np.max(np.abs(residual(sys, sys.pack(P)))) < 1e-12


def test_counts_four_dimensional_cross_polytope():
    K = cross_polytope_complex(4)
    X = np.vstack([np.eye(4), -np.eye(4)])
    P = Polyhedron(K, X, Euclidean(4))
    sys = build_constraint_system(K, lengths_from_polyhedron(P), P.space)
    assert (sys.n_vars, sys.n_eqs) == (16, 18)


def test_missing_length():
    P = regular_octahedron()
    L = lengths_from_polyhedron(P)
    L.pop(next(iter(L)))
    with pytest.raises(MissingLengthError):
        build_constraint_system(P.K, L, P.space)


@pytest.mark.parametrize("space", [Euclidean(3), Sphere(3), Hyperbolic(3)])
@given(seed=st.integers(0, 10 ** 6))
def test_jacobian_matches_finite_differences(space, seed):
    P = octa_in(space, seed=seed % 97)
    sys = build_constraint_system(P.K, lengths_from_polyhedron(P), space)
    z = sys.pack(P) + np.random.default_rng(seed).normal(scale=0.05, size=sys.n_vars)
    _, J = evaluate(sys, z)
    assert np.max(np.abs(J - finite_difference_jacobian(sys, z))) < 1e-7


def test_regular_octahedron_is_rigid():
    P = regular_octahedron()
    sys = build_constraint_system(P.K, lengths_from_polyhedron(P), P.space)
    rep = rigidity_test(sys, sys.pack(P))
    assert rep.rigid and rep.min_singular_value > 1e-6
    with pytest.raises(RigidError):
        track_flex(sys, sys.pack(P))
    with pytest.raises(NotOnVarietyError):
        rigidity_test(sys, sys.pack(P) + 0.1)


def test_track_elliptic_family(elliptic_specs):
    spec = elliptic_specs[3]
    fam = elliptic_family(spec)
    P0 = fam.evaluate(0.4)
    sys = build_constraint_system(P0.K, lengths_from_polyhedron(P0), P0.space)
    assert rigidity_test(sys, sys.pack(P0)).kernel_dim == 1
    tr = track_flex(sys, sys.pack(P0), max_steps=30)
    assert len(tr.params) == 31
    assert np.max(tr.meta["residuals"]) < 1e-10
    assert np.all(np.diff(tr.params) > 0)
    u = 0.4
    for z in tr.meta["z"][::5]:
        u, dist = nearest_family_parameter(sys, fam, z, u)
        assert dist < 1e-7


def test_degeneracy_flags():
    P = regular_octahedron()
    assert degeneracy_flags(P) == {"thin_facets": [], "split_plane_vertices": None}
    X = P.coords.copy()
    X[5] = (X[3] + X[4]) / 2  # b3 on the segment b1 b2
    flags = degeneracy_flags(Polyhedron(P.K, X, P.space))
    thin = [P.K.facets[i] for i in flags["thin_facets"]]
    assert thin == [(3, 4, 5)] or [tuple(sorted(f)) for f in thin] == [(3, 4, 5)]
    assert flags["split_plane_vertices"] == [3, 4, 5]


def test_antipodal_reduction_counts():
    K = cross_polytope_complex(3)
    inv = antipodal_involution(K)
    P = symmetric_seed(Euclidean(3), inv, 1)
    full = build_constraint_system(K, lengths_from_polyhedron(P), P.space)
    red = symmetry_reduce(full, inv)
    assert (red.system.n_vars, red.system.n_eqs) == (7, 6)
    z = red.system.pack(P.coords)
    assert rigidity_test(red.system, z).kernel_dim == 1
    assert red.full_residual(z) < 1e-12


def test_hyperbolic_line_reduction_counts():
    K = cross_polytope_complex(3)
    inv = antipodal_involution(K)
    P = symmetric_seed(Hyperbolic(3), inv, 2)
    red = symmetry_reduce(build_constraint_system(K, lengths_from_polyhedron(P), P.space), inv)
    assert (red.system.n_vars, red.system.n_eqs) == (10, 9)


def test_symmetry_mismatch():
    K = cross_polytope_complex(3)
    inv = antipodal_involution(K)
    P = octa_in(Euclidean(3), seed=5)
    full = build_constraint_system(K, lengths_from_polyhedron(P), P.space)
    with pytest.raises(SymmetryMismatchError):
        symmetry_reduce(full, inv)
    # a1 <-> a2 spans an edge
    edge_swap = Involution(K, (1, 0, 5, 4, 3, 2), "line")
    with pytest.raises(SymmetryMismatchError):
        symmetry_reduce(full, edge_swap)


def test_solve_reduced_finds_point():
    K = cross_polytope_complex(3)
    inv = antipodal_involution(K)
    P = symmetric_seed(Euclidean(3), inv, 4)
    red = symmetry_reduce(build_constraint_system(K, lengths_from_polyhedron(P), P.space), inv)
    z = solve_reduced(red, 0)
    assert red.full_residual(z) < 1e-12


def test_plane_symmetric_track():
    fam = track_plane_symmetric_octahedron(rng=0, max_steps=40)
    assert len(fam.params) == 41
    assert np.max(fam.edge_deviation()) < 1e-9
    red = fam.meta["reduction"]
    assert (red.system.n_vars, red.system.n_eqs) == (7, 6)
