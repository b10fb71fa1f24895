import itertools
from math import comb

import pytest
from hypothesis import given
from hypothesis import strategies as st

from flexilab.complexes import (
    Involution,
    antipodal_involution,
    build_pseudo_manifold,
    cross_polytope_complex,
    diagonals,
    pseudo_manifold_from_dict,
)
from flexilab.errors import (
    DisconnectedError,
    InvolutionError,
    NonOrientableError,
    RidgeCountError,
)
from flexilab.shapes import blob, cube

TETRA = [(1, 2, 3), (0, 3, 2), (0, 1, 3), (0, 2, 1)]


def octahedron_facets():
    return list(cross_polytope_complex(3).facets)


def test_octahedron_counts():
    K = build_pseudo_manifold(octahedron_facets())
    assert (K.n_vertices, K.n_edges, K.n_facets) == (6, 12, 8)
    assert K.n_edges == 3 * K.n_vertices - 6


def test_two_tetrahedra_sharing_an_edge():
    other = [(a + 4 if a > 1 else a, b + 4 if b > 1 else b, c + 4 if c > 1 else c) for a, b, c in TETRA]
    with pytest.raises(RidgeCountError, match="4 facets"):
        build_pseudo_manifold(TETRA + other)


def test_single_triangle():
    with pytest.raises(RidgeCountError):
        build_pseudo_manifold([(0, 1, 2)])


def test_disconnected():
    shifted = [tuple(v + 4 for v in f) for f in TETRA]
    with pytest.raises(DisconnectedError):
        build_pseudo_manifold(TETRA + shifted)


def test_one_flipped_facet_fails_and_reorients():
    facets = octahedron_facets()
    facets[3] = (facets[3][1], facets[3][0], facets[3][2])
    with pytest.raises(NonOrientableError):
        build_pseudo_manifold(facets)
    K = build_pseudo_manifold(facets, reorient=True)
    assert K.facets[0] == facets[0]
    assert K.facets == cross_polytope_complex(3).facets


def test_reversed_orientation_validates():
    K = cross_polytope_complex(4)
    R = K.reversed()
    assert R.n_facets == K.n_facets
    assert all(r != f for r, f in zip(R.facets, K.facets))


def test_non_orientable_complex():
    # six-vertex projective plane
    rp2 = [(0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
           (1, 2, 4), (2, 3, 5), (3, 4, 1), (4, 5, 2), (5, 1, 3)]
    with pytest.raises(NonOrientableError, match="no compatible orientation"):
        build_pseudo_manifold(rp2, reorient=True)


@pytest.mark.parametrize("n", range(2, 9))
def test_cross_polytope_f_vector(n):
    K = cross_polytope_complex(n)
    assert K.f_vector() == tuple(2 ** (j + 1) * comb(n, j + 1) for j in range(n))
    assert len(diagonals(K)) == n


def test_cross_polytope_small_cases():
    sq = cross_polytope_complex(2)
    assert (sq.n_vertices, sq.n_edges) == (4, 4)
    K = cross_polytope_complex(3)
    assert sorted(diagonals(K)) == [(0, 3), (1, 4), (2, 5)]
    assert diagonals(build_pseudo_manifold(TETRA)) == []


def test_refined_spheres_satisfy_euler():
    for P in (cube(), blob(levels=2)):
        assert P.K.n_edges == 3 * P.K.n_vertices - 6


def test_json_round_trip():
    K = cross_polytope_complex(3)
    K2 = pseudo_manifold_from_dict(K.to_dict())
    assert K2.facets == K.facets and K2.labels == K.labels


def test_involutions():
    K = cross_polytope_complex(3)
    inv = antipodal_involution(K)
    assert inv.fixed_vertices == []
    assert len(inv.edge_orbits()) == 6
    with pytest.raises(InvolutionError):
        Involution(K, (3, 4, 2, 0, 1, 5), "line")
    plane = Involution(K, (3, 4, 2, 0, 1, 5), "plane")
    assert plane.fixed_vertices == [2, 5]
    with pytest.raises(InvolutionError):
        Involution(K, (1, 2, 0, 3, 4, 5), "plane")


@given(st.permutations(range(6)))
def test_relabelling_keeps_validity(perm):
    facets = [tuple(perm[v] for v in f) for f in octahedron_facets()]
    K = build_pseudo_manifold(facets)
    assert K.f_vector() == (6, 12, 8)
    for ridge, (f, g) in K.ridges.items():
        assert set(ridge) <= set(K.facets[f]) and set(ridge) <= set(K.facets[g])


@given(st.integers(0, 7), st.integers(0, 2))
def test_rotating_a_facet_keeps_orientation(fi, shift):
    facets = octahedron_facets()
    f = facets[fi]
    facets[fi] = f[shift:] + f[:shift]  # cyclic shift of 3 is even
    build_pseudo_manifold(facets)


def test_every_ridge_has_two_facets():
    K = cross_polytope_complex(5)
    counts = {}
    for f in K.facets:
        for r in itertools.combinations(sorted(f), len(f) - 1):
            counts[r] = counts.get(r, 0) + 1
    assert set(counts.values()) == {2}
    assert set(counts) == set(K.ridges)
