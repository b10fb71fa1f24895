"""Flexible polyhedra: closed-form flexes of cross-polytopes, configuration
spaces, continuation and generalised volumes in R^n, S^n and hyperbolic space."""

from .complexes import PseudoManifold, build_pseudo_manifold, cross_polytope_complex
from .geomkit import Euclidean, Hyperbolic, ModelSpace, Polyhedron, Sphere

__all__ = [
    "PseudoManifold",
    "build_pseudo_manifold",
    "cross_polytope_complex",
    "ModelSpace",
    "Euclidean",
    "Sphere",
    "Hyperbolic",
    "Polyhedron",
]
__version__ = "0.1.0"
