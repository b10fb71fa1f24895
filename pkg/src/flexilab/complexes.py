"""Oriented pseudo-manifolds, cross-polytope boundaries and vertex involutions.

Vertices are dense integers ``0..m-1``.  A facet is a tuple of ``k+1`` vertex
ids whose order encodes its orientation.  Arbitrary hashable labels (e.g. the
strings of a JSON mesh) are mapped to integers on ingest and kept in
``PseudoManifold.labels``.
"""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field

from .errors import (
    DisconnectedError,
    InvolutionError,
    NonOrientableError,
    RidgeCountError,
)

__all__ = [
    "PseudoManifold",
    "Involution",
    "build_pseudo_manifold",
    "cross_polytope_complex",
    "diagonals",
    "antipodal_involution",
    "permutation_parity",
    "pseudo_manifold_from_dict",
]


def permutation_parity(seq) -> int:
    """Return +1 for an even arrangement of distinct sortable items, -1 for odd."""
    seq = list(seq)
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _induced(facet, i):
    """Sorted ridge obtained by dropping position ``i`` and its induced sign."""
    rest = facet[:i] + facet[i + 1:]
    sign = (-1) ** i * permutation_parity(rest)
    return tuple(sorted(rest)), sign


def _flip(facet):
    return (facet[1], facet[0]) + tuple(facet[2:])


@dataclass(frozen=True, eq=False)
class PseudoManifold:
    dim: int
    facets: tuple
    labels: tuple
    edges: tuple
    # sorted ridge -> (facet index, facet index)
    ridges: dict = field(repr=False)

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_facets(self) -> int:
        return len(self.facets)

    @property
    def vertices(self):
        return range(self.n_vertices)

    def f_vector(self):
        """Number of j-simplices for j = 0..dim."""
        faces = [set() for _ in range(self.dim + 1)]
        for f in self.facets:
            for j in range(self.dim + 1):
                faces[j].update(itertools.combinations(sorted(f), j + 1))
        return tuple(len(s) for s in faces)

    def ridge_facets(self, ridge):
        return self.ridges[tuple(sorted(ridge))]

    def has_edge(self, u, v) -> bool:
        return (min(u, v), max(u, v)) in self._edge_set

    @property
    def _edge_set(self):
        # cached lazily; dataclass is frozen so go through object.__setattr__
        try:
            return self.__dict__["_edges_cache"]
        except KeyError:
            s = frozenset(self.edges)
            object.__setattr__(self, "_edges_cache", s)
            return s

    def reversed(self) -> "PseudoManifold":
        lab = self.labels
        return build_pseudo_manifold([tuple(lab[v] for v in _flip(f)) for f in self.facets], labels=lab)

    def index(self, label) -> int:
        return self.labels.index(label)

    def to_dict(self) -> dict:
        return {
            "dim": self.dim,
            "vertices": [str(v) for v in self.labels],
            "facets": [[str(self.labels[v]) for v in f] for f in self.facets],
        }


def build_pseudo_manifold(facets, labels=None, reorient=False) -> PseudoManifold:
    """Validate an oriented facet list and derive its edges and ridges.

    With ``reorient=False`` the given orientations must already be compatible.
    With ``reorient=True`` the first facet keeps its orientation and the rest are
    flipped as needed by a breadth-first sweep over shared ridges.
    """
    facets = [tuple(f) for f in facets]
    if not facets:
        raise ValueError("facet list is empty")
    size = len(facets[0])
    if size < 2 or any(len(f) != size for f in facets):
        raise ValueError("all facets must have the same number (>= 2) of vertices")
    for f in facets:
        if len(set(f)) != len(f):
            raise ValueError(f"facet {f} repeats a vertex")

    if labels is None:
        labels = sorted({v for f in facets for v in f}, key=lambda v: (str(type(v)), v))
    labels = tuple(labels)
    lookup = {lab: i for i, lab in enumerate(labels)}
    try:
        facets = [tuple(lookup[v] for v in f) for f in facets]
    except KeyError as exc:
        raise ValueError(f"facet uses unknown vertex {exc.args[0]!r}") from None
    used = {v for f in facets for v in f}
    if len(used) != len(labels):
        missing = [labels[i] for i in range(len(labels)) if i not in used]
        raise ValueError(f"vertices {missing} lie in no facet")
    if len({tuple(sorted(f)) for f in facets}) != len(facets):
        raise ValueError("duplicate facet")

    dim = size - 1
    incidence = {}
    for fi, f in enumerate(facets):
        for i in range(size):
            ridge, sign = _induced(f, i)
            incidence.setdefault(ridge, []).append((fi, sign))

    for ridge in sorted(incidence):
        if len(incidence[ridge]) != 2:
            names = tuple(labels[v] for v in ridge)
            raise RidgeCountError(
                f"ridge {names} lies in {len(incidence[ridge])} facets, expected 2"
            )

    adj = [[] for _ in facets]
    for ridge, ((f1, s1), (f2, s2)) in incidence.items():
        adj[f1].append((f2, s1, s2))
        adj[f2].append((f1, s2, s1))

    # strong connectivity + orientation propagation in one sweep
    flip = [None] * len(facets)
    flip[0] = False
    queue = deque([0])
    conflict = None
    while queue:
        f = queue.popleft()
        for g, sf, sg in adj[f]:
            # g must end up with induced sign opposite to f's on the shared ridge
            sf_eff = -sf if flip[f] else sf
            want_flip = (sg == sf_eff)
            if flip[g] is None:
                flip[g] = want_flip
                queue.append(g)
            elif flip[g] != want_flip and conflict is None:
                conflict = (f, g)
    if any(x is None for x in flip):
        lost = flip.index(None)
        raise DisconnectedError(
            f"facet {tuple(labels[v] for v in facets[lost])} is not reachable from "
            f"facet {tuple(labels[v] for v in facets[0])} through shared ridges"
        )
    if conflict is not None:
        raise NonOrientableError("complex admits no compatible orientation")

    if reorient:
        facets = [_flip(f) if fl else f for f, fl in zip(facets, flip)]
    elif any(flip):
        bad = facets[flip.index(True)]
        raise NonOrientableError(
            f"facet {tuple(labels[v] for v in bad)} is oriented inconsistently with "
            f"facet {tuple(labels[v] for v in facets[0])}"
        )

    ridges = {}
    for ridge, pairs in incidence.items():
        ridges[ridge] = (pairs[0][0], pairs[1][0])
    edges = sorted({e for f in facets for e in itertools.combinations(sorted(f), 2)})
    return PseudoManifold(
        dim=dim,
        facets=tuple(facets),
        labels=labels,
        edges=tuple(edges),
        ridges=ridges,
    )


def cross_polytope_complex(n: int) -> PseudoManifold:
    """Boundary of the n-dimensional cross-polytope.

    Vertex ``i`` is a_{i+1} (the image of +e_{i+1}), vertex ``n+i`` is b_{i+1}
    (the image of -e_{i+1}).  Facets are oriented so that the standard
    realisation at the points +-e_i has outward orientation.
    """
    if n < 2:
        raise ValueError("cross-polytope needs n >= 2")
    facets = []
    for signs in itertools.product((1, -1), repeat=n):
        f = [i if s > 0 else n + i for i, s in enumerate(signs)]
        sign = 1
        for s in signs:
            sign *= s
        if sign < 0:
            f[0], f[1] = f[1], f[0]
        facets.append(tuple(f))
    labels = tuple(f"a{i + 1}" for i in range(n)) + tuple(f"b{i + 1}" for i in range(n))
    return build_pseudo_manifold([tuple(labels[v] for v in f) for f in facets], labels=labels)


def diagonals(K: PseudoManifold):
    """Unordered vertex pairs that are not edges of ``K``."""
    return [
        (u, v)
        for u, v in itertools.combinations(range(K.n_vertices), 2)
        if not K.has_edge(u, v)
    ]


@dataclass(frozen=True, eq=False)
class Involution:
    """A simplicial involution of ``K`` used as a line or plane symmetry."""

    K: PseudoManifold
    perm: tuple
    kind: str = "line"

    def __post_init__(self):
        perm = tuple(int(p) for p in self.perm)
        object.__setattr__(self, "perm", perm)
        m = self.K.n_vertices
        if self.kind not in ("line", "plane"):
            raise InvolutionError(f"unknown symmetry kind {self.kind!r}")
        if sorted(perm) != list(range(m)):
            raise InvolutionError("involution is not a permutation of the vertices")
        for v in range(m):
            if perm[perm[v]] != v:
                raise InvolutionError(f"phi(phi({v})) != {v}")
        fset = {frozenset(f) for f in self.K.facets}
        for f in self.K.facets:
            if frozenset(perm[v] for v in f) not in fset:
                raise InvolutionError(f"image of facet {f} is not a facet")
        if self.kind == "line":
            for v in range(m):
                if perm[v] == v:
                    raise InvolutionError(f"vertex {self.K.labels[v]} is fixed by a line symmetry")

    def __call__(self, v):
        return self.perm[v]

    @property
    def fixed_vertices(self):
        return [v for v in range(self.K.n_vertices) if self.perm[v] == v]

    def representatives(self):
        """One vertex per orbit, smallest id first."""
        return [v for v in range(self.K.n_vertices) if v <= self.perm[v]]

    def edge_orbits(self):
        """One representative edge per orbit {e, phi(e)}."""
        reps, seen = [], set()
        for u, v in self.K.edges:
            if (u, v) in seen:
                continue
            img = tuple(sorted((self.perm[u], self.perm[v])))
            seen.add((u, v))
            seen.add(img)
            reps.append((u, v))
        return reps


def antipodal_involution(K: PseudoManifold, kind="line") -> Involution:
    """a_i <-> b_i on a cross-polytope complex."""
    n = K.n_vertices // 2
    perm = [(v + n) % (2 * n) for v in range(2 * n)]
    return Involution(K, tuple(perm), kind)


def pseudo_manifold_from_dict(data: dict, reorient=False) -> PseudoManifold:
    """Inverse of :meth:`PseudoManifold.to_dict`."""
    labels = tuple(data["vertices"])
    K = build_pseudo_manifold(data["facets"], labels=labels, reorient=reorient)
    if "dim" in data and int(data["dim"]) != K.dim:
        raise ValueError(f"declared dim {data['dim']} but facets have dim {K.dim}")
    return K
