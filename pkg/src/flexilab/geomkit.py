"""Model spaces, simplex realisation, normal frames and dihedral angles.

Three model spaces are supported:

* ``Euclidean(n)``: points of R^n with the dot product;
* ``Sphere(n)``: unit vectors of R^{n+1};
* ``Hyperbolic(n)``: the upper sheet ``<x,x> = 1, x0 > 0`` of R^{1,n} with
  ``<x,y> = x0 y0 - x1 y1 - ... - xn yn``.

For the two curved spaces ``c(dist(x, y)) = <x, y>`` with ``c = cos`` or
``c = cosh``.  Geodesic simplices are images of affine simplices under the
normalising (pseudo-linear) map, so most computations reduce to linear algebra
on the ambient vectors.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

import numpy as np

from .complexes import PseudoManifold
from .errors import (
    DegenerateFacetError,
    DegenerateSimplexError,
    MinorError,
    NotRealizableError,
    NullCombinationError,
    OffModelError,
    RankError,
    ShapeError,
    SignError,
)

EUCLID, SPHERE, HYPERBOLIC = "euclid", "sphere", "hyperbolic"
RANK_TOL = 1e-9


@dataclass(frozen=True)
class ModelSpace:
    kind: str
    n: int

    def __post_init__(self):
        if self.kind not in (EUCLID, SPHERE, HYPERBOLIC):
            raise ValueError(f"unknown model space {self.kind!r}")
        if self.n < 1:
            raise ValueError("dimension must be positive")

    @property
    def curved(self) -> bool:
        return self.kind != EUCLID

    @property
    def ambient(self) -> int:
        return self.n + 1 if self.curved else self.n

    @property
    def metric(self) -> np.ndarray:
        w = np.ones(self.ambient)
        if self.kind == HYPERBOLIC:
            w[1:] = -1.0
        return w

    @property
    def sigma(self) -> float:
        """Total volume of S^n (only meaningful for the sphere)."""
        k = self.n + 1
        return 2 * math.pi ** (k / 2) / math.gamma(k / 2)

    def inner(self, x, y):
        x = np.asarray(x, float)
        y = np.asarray(y, float)
        return np.sum(x * self.metric * y, axis=-1)

    def tangent_inner(self, x, y):
        """Positive definite product on tangent vectors."""
        if self.kind == HYPERBOLIC:
            return -self.inner(x, y)
        return self.inner(x, y)

    def c(self, t):
        if self.kind == SPHERE:
            return np.cos(t)
        if self.kind == HYPERBOLIC:
            return np.cosh(t)
        raise TypeError("c() is defined for curved spaces only")

    def check(self, x, tol=1e-10):
        x = np.asarray(x, float)
        if x.shape[-1] != self.ambient:
            raise ShapeError(f"point has {x.shape[-1]} coordinates, {self.kind}({self.n}) needs {self.ambient}")
        if not self.curved:
            return x
        dev = np.abs(self.inner(x, x) - 1.0)
        if np.any(dev > tol):
            raise OffModelError(f"point off the model surface (|<x,x>-1| = {np.max(dev):.3g})")
        if self.kind == HYPERBOLIC and np.any(x[..., 0] <= 0):
            raise OffModelError("point on the lower sheet of the hyperboloid")
        return x

    def __str__(self):
        return f"{self.kind}({self.n})"


def Euclidean(n):
    return ModelSpace(EUCLID, n)


def Sphere(n):
    return ModelSpace(SPHERE, n)


def Hyperbolic(n):
    return ModelSpace(HYPERBOLIC, n)


def space_from_name(name, n) -> ModelSpace:
    aliases = {"euclid": EUCLID, "euclidean": EUCLID, "sphere": SPHERE, "spherical": SPHERE,
               "hyperbolic": HYPERBOLIC, "lobachevsky": HYPERBOLIC}
    try:
        return ModelSpace(aliases[name.lower()], int(n))
    except KeyError:
        raise ValueError(f"unknown space {name!r}") from None


def distance(space: ModelSpace, x, y):
    """Geodesic distance; vectorised over leading axes."""
    x = space.check(x)
    y = space.check(y)
    d = x - y
    if space.kind == EUCLID:
        return np.sqrt(np.sum(d * d, axis=-1))
    if space.kind == SPHERE:
        # chord form is accurate for short arcs, the cosine form near antipodes
        chord = np.sqrt(np.sum(d * d, axis=-1))
        return np.where(chord < 1.9, 2 * np.arcsin(np.clip(chord / 2, 0, 1)),
                        np.arccos(np.clip(space.inner(x, y), -1, 1)))
    q = np.maximum(-space.inner(d, d), 0.0)
    return 2 * np.arcsinh(np.sqrt(q) / 2)


def point_distances(space: ModelSpace, pts):
    pts = np.asarray(pts, float)
    return distance(space, pts[:, None, :], pts[None, :, :])


def cayley_menger_det(sq_dists):
    """Bordered Cayley-Menger determinant of a squared-distance matrix."""
    D = np.asarray(sq_dists, float)
    if D.ndim != 2 or D.shape[0] != D.shape[1]:
        raise ShapeError("squared distances must form a square matrix")
    scale = max(1.0, float(np.max(np.abs(D))))
    if not np.allclose(D, D.T, atol=1e-12 * scale):
        raise ShapeError("squared-distance matrix is not symmetric")
    if np.any(np.abs(np.diag(D)) > 1e-12 * scale):
        raise ShapeError("squared-distance matrix must have zero diagonal")
    p = D.shape[0]
    B = np.ones((p + 1, p + 1))
    B[0, 0] = 0.0
    B[1:, 1:] = D
    return float(np.linalg.det(B))


def _lengths_matrix(lengths):
    if isinstance(lengths, dict):
        verts = sorted({v for e in lengths for v in e})
        if verts != list(range(len(verts))):
            raise ShapeError("length map must use vertices 0..p")
        L = np.zeros((len(verts), len(verts)))
        for (i, j), val in lengths.items():
            L[i, j] = L[j, i] = val
        for i, j in combinations(range(len(verts)), 2):
            if (i, j) not in lengths and (j, i) not in lengths:
                raise ShapeError(f"missing length for edge ({i}, {j})")
        return L
    L = np.asarray(lengths, float)
    if L.ndim != 2 or L.shape[0] != L.shape[1] or not np.allclose(L, L.T):
        raise ShapeError("lengths must be a symmetric square matrix")
    return L


def _sequential_cholesky(S, what):
    """Cholesky factor of ``S``; names the first leading minor that fails."""
    p = S.shape[0]
    L = np.zeros_like(S)
    scale = max(1.0, float(np.max(np.abs(np.diag(S))))) if p else 1.0
    for j in range(p):
        piv = S[j, j] - L[j, :j] @ L[j, :j]
        if not piv > 1e-12 * scale:
            raise NotRealizableError(
                f"{what}: leading minor of order {j + 1} is not positive (pivot {piv:.3g})"
            )
        L[j, j] = math.sqrt(piv)
        for i in range(j + 1, p):
            L[i, j] = (S[i, j] - L[i, :j] @ L[j, :j]) / L[j, j]
    return L


def realize_simplex_from_lengths(lengths, space: ModelSpace):
    """Coordinates of a simplex with the given edge lengths.

    The first vertex sits at the origin (Euclidean) or at ``e0`` (curved
    spaces); the remaining ones are placed by sequential orthogonalisation so
    vertex ``i`` only uses the first ``i`` spatial coordinates.
    """
    L = _lengths_matrix(lengths)
    p = L.shape[0] - 1
    if p > space.n:
        raise NotRealizableError(f"a {p}-simplex does not fit in {space}")
    if np.any(L[np.triu_indices(p + 1, 1)] <= 0):
        raise NotRealizableError("edge lengths must be positive")
    if space.kind == EUCLID:
        sq = L ** 2
        S = (sq[0, 1:][:, None] + sq[0, 1:][None, :] - sq[1:, 1:]) / 2
        R = _sequential_cholesky(S, "Euclidean Gram matrix")
        X = np.zeros((p + 1, space.ambient))
        X[1:, :p] = R
        return X
    if space.kind == SPHERE and np.any(L >= math.pi):
        raise NotRealizableError("spherical edge lengths must be < pi")
    G = space.c(L)
    g0 = G[0, 1:]
    if space.kind == SPHERE:
        S = G[1:, 1:] - np.outer(g0, g0)
    else:
        S = np.outer(g0, g0) - G[1:, 1:]
    R = _sequential_cholesky(S, f"{space.kind} Gram matrix")
    X = np.zeros((p + 1, space.ambient))
    X[0, 0] = 1.0
    X[1:, 0] = g0
    X[1:, 1:p + 1] = R
    return X


@dataclass(frozen=True, eq=False)
class SimplexFrame:
    vertices: np.ndarray   # (n, n): a_1..a_n in R^n
    altitudes: np.ndarray  # (n,)
    normals: np.ndarray    # (n, n): interior unit facet normals inside the hyperplane
    m: np.ndarray          # (n,): unit normal of the hyperplane
    gram: np.ndarray       # (n, n): <n_i, n_j>

    @property
    def n(self):
        return self.vertices.shape[0]

    def facet_measures(self):
        """Kernel vector of the normal Gram matrix, scaled to sum 1."""
        s = 1.0 / self.altitudes
        return s / s.sum()

    def to_dict(self):
        return {"vertices": self.vertices.tolist()}


def simplex_frame(vertices) -> SimplexFrame:
    A = np.asarray(vertices, float)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ShapeError("simplex_frame needs n vertices in R^n")
    n = A.shape[0]
    E = (A[1:] - A[0]).T
    sv = np.linalg.svd(E, compute_uv=False)
    if n > 1 and sv[-1] < 1e-10 * max(1.0, sv[0]):
        raise DegenerateSimplexError("vertices are affinely dependent")
    # m spans the orthogonal complement of the edge directions
    m = np.array([np.linalg.det(np.column_stack([E, np.eye(n)[:, k]])) for k in range(n)])
    m /= np.linalg.norm(m)
    normals = np.empty((n, n))
    alt = np.empty(n)
    for i in range(n):
        others = [j for j in range(n) if j != i]
        base = A[others[0]]
        F = (A[others[1:]] - base).T
        basis = np.column_stack([F, m]) if F.size else m[:, None]
        Q, _ = np.linalg.qr(basis)
        h = A[i] - base
        h = h - Q @ (Q.T @ h)
        alt[i] = np.linalg.norm(h)
        normals[i] = h / alt[i]
    return SimplexFrame(A, alt, normals, m, normals @ normals.T)


def realize_from_normal_gram(G) -> SimplexFrame:
    """Simplex in R^n whose interior facet normals have Gram matrix ``G``.

    The normals determine the simplex up to similarity; it is scaled so the
    smallest altitude is 1.
    """
    G = np.asarray(G, float)
    if G.ndim != 2 or G.shape[0] != G.shape[1] or G.shape[0] < 2:
        raise ShapeError("normal Gram matrix must be square, n >= 2")
    if not np.allclose(G, G.T, atol=1e-12) or not np.allclose(np.diag(G), 1.0, atol=1e-12):
        raise ShapeError("normal Gram matrix must be symmetric with unit diagonal")
    n = G.shape[0]
    w, V = np.linalg.eigh(G)
    lam_max = max(abs(w[-1]), 1.0)
    zero = np.abs(w) < RANK_TOL * lam_max
    if np.any((w < 0) & ~zero):
        raise RankError(f"matrix is not positive semidefinite (eigenvalue {w[0]:.3g})")
    rank = int(np.sum(~zero))
    if rank != n - 1:
        raise RankError(f"rank is {rank}, a simplex needs rank {n - 1}")
    ker = V[:, 0]
    if not (np.all(ker > RANK_TOL) or np.all(ker < -RANK_TOL)):
        raise SignError(f"kernel vector {np.round(ker, 6)} changes sign")
    for r in range(1, n):
        for idx in combinations(range(n), r):
            if abs(np.linalg.det(G[np.ix_(idx, idx)])) < RANK_TOL:
                raise MinorError(f"principal minor on rows {idx} vanishes")

    C = np.linalg.cholesky(G[: n - 1, : n - 1])
    last = np.linalg.solve(C, G[: n - 1, n - 1])
    N = np.vstack([C, last])  # rows are the normals inside R^{n-1}
    X = np.empty((n, n - 1))
    for i in range(n):
        idx = [j for j in range(n) if j != i]
        # inscribed sphere of radius 1 at the origin
        X[i] = np.linalg.solve(N[idx], -np.ones(n - 1))
    alt = np.einsum("ij,ij->i", N, X) + 1.0
    X /= alt.min()
    A = np.hstack([X, np.zeros((n, 1))])
    frame = simplex_frame(A)
    err = np.max(np.abs(frame.gram - G))
    if err > 1e-9:
        raise RankError(f"realised normals miss the target Gram matrix by {err:.3g}")
    return frame


# ---------------------------------------------------------------------------
# polyhedra


@dataclass(eq=False)
class Polyhedron:
    """A vertex placement of a pseudo-manifold in a model space."""

    K: PseudoManifold
    coords: np.ndarray
    space: ModelSpace

    def __post_init__(self):
        self.coords = np.asarray(self.coords, float)
        if self.coords.shape != (self.K.n_vertices, self.space.ambient):
            raise ShapeError(
                f"coords shape {self.coords.shape} does not match "
                f"{self.K.n_vertices} vertices in {self.space}"
            )
        if self.K.dim != self.space.n - 1:
            raise ShapeError(f"a {self.K.dim}-dimensional complex is not a hypersurface in {self.space}")

    def edge_lengths(self):
        e = np.array(self.K.edges)
        return distance(self.space, self.coords[e[:, 0]], self.coords[e[:, 1]])

    def facet_coords(self, f):
        return self.coords[list(self.K.facets[f])]

    def translated(self, shift):
        if self.space.curved:
            raise TypeError("translation is Euclidean only")
        return Polyhedron(self.K, self.coords + np.asarray(shift, float), self.space)

    def to_dict(self):
        d = self.K.to_dict()
        d["space"] = self.space.kind
        d["n"] = self.space.n
        d["coords"] = self.coords.tolist()
        return d


def _cofactor_vector(cols):
    """Vector c with c . w = det([cols, w]) for every w."""
    cols = np.asarray(cols, float)
    d = cols.shape[0]
    eye = np.eye(d)
    return np.array([np.linalg.det(np.column_stack([cols, eye[:, k]])) for k in range(d)])


def facet_normal(space: ModelSpace, pts):
    """Outward unit normal of an oriented facet.

    Euclidean facets use ``det([N, v2-v1, ..., vn-v1]) > 0``.  In the curved
    spaces the normal is metric-orthogonal to the facet's linear span and
    satisfies ``(-1)^(n-1) det([v1, ..., vn, N]) > 0``; both rules agree with
    the Euclidean one in a chart around ``e0``.
    """
    pts = np.asarray(pts, float)
    n = space.n
    if space.kind == EUCLID:
        E = (pts[1:] - pts[0]).T
        c = _cofactor_vector(E)
        # det([N, E]) = (-1)^(n-1) det([E, N])
        N = c * (-1) ** (n - 1)
        norm = np.linalg.norm(N)
    else:
        c = _cofactor_vector(pts.T)
        N = space.metric * c
        s = np.sign((-1) ** (n - 1) * (c @ N))
        N = N * (s if s != 0 else 1.0)
        norm = math.sqrt(abs(space.tangent_inner(N, N)))
    if norm < 1e-14:
        raise DegenerateFacetError("facet is degenerate")
    return N / norm


def _project_off(space, base_pts, v):
    """Component of ``v`` orthogonal to the ridge, as a tangent direction."""
    if space.kind == EUCLID:
        E = (base_pts[1:] - base_pts[0]).T
        r = v - base_pts[0]
        if E.size:
            Q, _ = np.linalg.qr(E)
            r = r - Q @ (Q.T @ r)
        return r
    R = base_pts.T
    W = space.metric
    M = R.T @ (W[:, None] * R)
    coef = np.linalg.solve(M, R.T @ (W * v))
    return v - R @ coef


def _ridge_opposite(K, ridge):
    ridge = tuple(sorted(ridge))
    try:
        f1, f2 = K.ridges[ridge]
    except KeyError:
        raise ValueError(f"{ridge} is not a ridge of the complex") from None
    o1 = next(v for v in K.facets[f1] if v not in ridge)
    o2 = next(v for v in K.facets[f2] if v not in ridge)
    return ridge, f1, f2, o1, o2


def dihedral_angle(P: Polyhedron, ridge) -> float:
    """Interior dihedral angle in (0, 2pi) at a ridge, measured on the side the
    facet orientations call inside.  Reversing the orientation of ``K`` maps
    the angle to ``2 pi - angle``."""
    space = P.space
    ridge, f1, f2, o1, o2 = _ridge_opposite(P.K, ridge)
    R = P.coords[list(ridge)]
    X = P.coords
    scale = max(1.0, float(np.max(np.abs(R))))
    u1 = _project_off(space, R, X[o1])
    u2 = _project_off(space, R, X[o2])
    g = space.tangent_inner if space.curved else (lambda a, b: float(a @ b))
    n1sq, n2sq = g(u1, u1), g(u2, u2)
    if n1sq < (1e-12 * scale) ** 2 or n2sq < (1e-12 * scale) ** 2:
        raise DegenerateFacetError(f"a facet at ridge {ridge} is degenerate")
    u1 = u1 / math.sqrt(n1sq)
    u2 = u2 / math.sqrt(n2sq)
    nrm = facet_normal(space, P.facet_coords(f1))
    ang = math.atan2(-g(nrm, u2), g(u1, u2))
    return ang % (2 * math.pi)


def ridges_of(K: PseudoManifold):
    return sorted(K.ridges)


def dihedral_angles(P: Polyhedron, ridges=None) -> np.ndarray:
    ridges = ridges_of(P.K) if ridges is None else ridges
    return np.array([dihedral_angle(P, r) for r in ridges])


def simplex_volume(space: ModelSpace, pts) -> float:
    """Unsigned volume of a low-dimensional simplex.

    Euclidean simplices of any dimension; geodesic segments and triangles in the
    curved spaces (triangle area from the angle excess or defect).
    """
    pts = np.asarray(pts, float)
    k = pts.shape[0] - 1
    if k == 0:
        return 1.0
    if space.kind == EUCLID:
        E = pts[1:] - pts[0]
        return math.sqrt(max(np.linalg.det(E @ E.T), 0.0)) / math.factorial(k)
    if k == 1:
        return float(distance(space, pts[0], pts[1]))
    if k == 2:
        angles = []
        for i in range(3):
            a = pts[i]
            b, c = pts[(i + 1) % 3], pts[(i + 2) % 3]
            tb = _project_off(space, a[None, :], b)
            tc = _project_off(space, a[None, :], c)
            cos = space.tangent_inner(tb, tc) / math.sqrt(space.tangent_inner(tb, tb) * space.tangent_inner(tc, tc))
            angles.append(math.acos(max(-1.0, min(1.0, cos))))
        total = sum(angles)
        return total - math.pi if space.kind == SPHERE else math.pi - total
    raise NotImplementedError("curved simplex volumes above dimension 2 are not available")


def pseudo_linear_point(space: ModelSpace, vertices, beta):
    """Image of barycentric coordinates under the normalising map."""
    if not space.curved:
        raise TypeError("pseudo-linear maps are defined for the curved spaces")
    V = space.check(np.asarray(vertices, float))
    beta = np.asarray(beta, float)
    if beta.shape != (V.shape[0],) or np.any(beta < 0) or abs(beta.sum() - 1) > 1e-12:
        raise ValueError("barycentric coordinates must be nonnegative and sum to 1")
    x = beta @ V
    q = space.inner(x, x)
    if q <= 1e-12:
        raise NullCombinationError(f"combination has <x,x> = {q:.3g}")
    return x / math.sqrt(q)


# ---------------------------------------------------------------------------
# frames used to move a simplex onto another congruent one


def _adapted_frame(space: ModelSpace, pts):
    """Basis adapted to a facet: orthonormalised points, then the normal."""
    pts = np.asarray(pts, float)
    if space.kind == EUCLID:
        E = (pts[1:] - pts[0]).T
        Q, Rr = np.linalg.qr(E)
        Q = Q * np.sign(np.diag(Rr))
        extra = _cofactor_vector(Q)
        F = np.column_stack([Q, extra / np.linalg.norm(extra)])
        return F
    W = space.metric
    cols = []
    for v in pts:
        u = v.copy()
        for c in cols:
            u = u - (c @ (W * u)) / (c @ (W * c)) * c
        cols.append(u / math.sqrt(abs(u @ (W * u))))
    extra = W * _cofactor_vector(np.column_stack(cols))
    extra = extra / math.sqrt(abs(extra @ (W * extra)))
    F = np.column_stack(cols + [extra])
    if np.linalg.det(F) < 0:
        F[:, -1] *= -1
    return F


def congruence(space: ModelSpace, source, target):
    """Orientation-preserving isometry taking the facet ``source`` onto the
    congruent facet ``target``; returns a function acting on point arrays."""
    source = np.asarray(source, float)
    target = np.asarray(target, float)
    Fs = _adapted_frame(space, source)
    Ft = _adapted_frame(space, target)
    if space.kind == EUCLID:
        R = Ft @ Fs.T
        s0, t0 = source[0], target[0]
        return lambda X: (np.asarray(X, float) - s0) @ R.T + t0
    L = Ft @ np.linalg.inv(Fs)
    return lambda X: np.asarray(X, float) @ L.T
