"""Test polyhedra used by the volume checks and the CLI fixtures."""
from __future__ import annotations

import numpy as np

from .complexes import build_pseudo_manifold, cross_polytope_complex
from .geomkit import Euclidean, Polyhedron, Sphere


def regular_octahedron(scale=1.0) -> Polyhedron:
    """Vertices +-scale*e_i, outward orientation; volume 4/3 * scale^3."""
    X = scale * np.vstack([np.eye(3), -np.eye(3)])
    return Polyhedron(cross_polytope_complex(3), X, Euclidean(3))


def cube(side=1.0) -> Polyhedron:
    """The cube [0, side]^3 split into 12 outward triangles."""
    V = side * np.array([[i >> 2 & 1, i >> 1 & 1, i & 1] for i in range(8)], float)
    # each face listed counter-clockwise seen from outside
    quads = [(0, 1, 3, 2), (4, 6, 7, 5), (0, 4, 5, 1), (2, 3, 7, 6), (0, 2, 6, 4), (1, 5, 7, 3)]
    facets = []
    for a, b, c, d in quads:
        facets += [(a, b, c), (a, c, d)]
    K = build_pseudo_manifold(facets, labels=tuple(range(8)))
    return Polyhedron(K, V, Euclidean(3))


def _subdivide(X, facets):
    X = [np.asarray(x, float) for x in X]
    cache = {}

    def mid(a, b):
        key = (min(a, b), max(a, b))
        if key not in cache:
            m = X[a] + X[b]
            X.append(m / np.linalg.norm(m))
            cache[key] = len(X) - 1
        return cache[key]

    out = []
    for a, b, c in facets:
        ab, bc, ca = mid(a, b), mid(b, c), mid(c, a)
        out += [(a, ab, ca), (ab, b, bc), (ca, bc, c), (ab, bc, ca)]
    return np.array(X), out


def blob(levels=2, bumps=0.35, seed=0) -> Polyhedron:
    """Star-shaped, non-convex embedded sphere: a subdivided octahedron with
    random smooth radial bumps."""
    oct_ = regular_octahedron()
    X, facets = oct_.coords, [tuple(f) for f in oct_.K.facets]
    for _ in range(levels):
        X, facets = _subdivide(X, facets)
    rng = np.random.default_rng(seed)
    dirs = rng.normal(size=(4, 3))
    dirs /= np.linalg.norm(dirs, axis=1, keepdims=True)
    amp = rng.uniform(0.5, 1.0, 4)
    r = 1 + bumps * np.sum(amp * np.cos(4 * (X @ dirs.T)), axis=1) / 4
    K = build_pseudo_manifold(facets, labels=tuple(range(len(X))))
    return Polyhedron(K, X * r[:, None], Euclidean(3))


def spherical_tetrahedron(edge=0.05, center=None) -> Polyhedron:
    """Small regular tetrahedron on S^3, positively oriented, around ``center``
    (default e0)."""
    c = np.array([1.0, 0, 0, 0]) if center is None else np.asarray(center, float)
    T = np.array([[1, 1, 1], [1, -1, -1], [-1, 1, -1], [-1, -1, 1]], float)
    T *= edge / (2 * np.sqrt(2))
    # tangent frame at c
    Q, _ = np.linalg.qr(np.column_stack([c, np.eye(4)[:, :3]]))
    B = Q[:, 1:] * np.sign(Q[:, :1].T @ c)
    if np.linalg.det(np.column_stack([c, B])) < 0:
        B[:, 0] *= -1
    tang = T @ B.T
    r = np.linalg.norm(tang, axis=1, keepdims=True)
    X = np.cos(r) * c + np.sin(r) * tang / r
    facets = [(1, 3, 2), (0, 2, 3), (0, 3, 1), (0, 1, 2)]
    K = build_pseudo_manifold(facets, labels=(0, 1, 2, 3))
    return Polyhedron(K, X, Sphere(3))
