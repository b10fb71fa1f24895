"""Quadratic constraint systems for polyhedra with prescribed edge lengths.

Every system is stored in one linear form: the position of vertex ``v`` is
``A[v] @ z + b[v]`` for the variable vector ``z``.  A pinned facet has
``A[v] = 0`` and ``b[v]`` equal to its anchor; a symmetry-reduced system writes
partner vertices as ``R @ x_rep``.  Residuals and Jacobians are then shared by
the full and the reduced systems.

Equations come in two flavours, norms ``<x_v, x_v> = 1`` (curved spaces only,
listed first) and edges: ``|x_u - x_v|^2 = l^2`` in Euclidean space,
``<x_u, x_v> = c(l)`` on the sphere and the hyperboloid.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field

import numpy as np

from .complexes import Involution, PseudoManifold
from .errors import (
    BifurcationError,
    CorrectorDivergenceError,
    MissingLengthError,
    NotOnVarietyError,
    RigidError,
    ShapeError,
    SymmetryMismatchError,
)
from .geomkit import (
    EUCLID,
    ModelSpace,
    Polyhedron,
    congruence,
    realize_simplex_from_lengths,
)

KERNEL_TOL = 1e-8


def edge_key(u, v):
    return (u, v) if u < v else (v, u)


def lengths_from_polyhedron(P: Polyhedron) -> dict:
    return {e: float(l) for e, l in zip(P.K.edges, P.edge_lengths())}


@dataclass(frozen=True, eq=False)
class ConstraintSystem:
    space: ModelSpace
    K: PseudoManifold
    lengths: dict
    A: np.ndarray            # (m, d, n_vars)
    b: np.ndarray            # (m, d)
    var_index: tuple         # (vertex, coordinate) for every variable
    norm_vertices: np.ndarray
    edge_eqs: np.ndarray     # (e, 2) vertex pairs
    targets: np.ndarray      # l^2 (Euclidean) or c(l)
    pinned: tuple = ()
    anchors: np.ndarray | None = None
    meta: dict = field(default_factory=dict)

    @property
    def n_vars(self) -> int:
        return self.A.shape[2]

    @property
    def n_eqs(self) -> int:
        return len(self.norm_vertices) + len(self.edge_eqs)

    @property
    def q(self):
        return {e: l * l for e, l in self.lengths.items()}

    def positions(self, z) -> np.ndarray:
        z = np.asarray(z, float)
        if z.shape != (self.n_vars,):
            raise ShapeError(f"expected {self.n_vars} variables, got shape {z.shape}")
        return self.A @ z + self.b

    def polyhedron(self, z) -> Polyhedron:
        return Polyhedron(self.K, self.positions(z), self.space)

    def pack(self, X) -> np.ndarray:
        """Variable vector of the placement ``X`` (moved onto the anchors first
        when the system pins a facet)."""
        X = np.asarray(X.coords if isinstance(X, Polyhedron) else X, float)
        if self.pinned:
            X = congruence(self.space, X[list(self.pinned)], self.anchors)(X)
        return np.array([X[v, c] for v, c in self.var_index])


def _check_lengths(K, lengths):
    out = {}
    for u, v in K.edges:
        if (u, v) in lengths:
            out[(u, v)] = float(lengths[(u, v)])
        elif (v, u) in lengths:
            out[(u, v)] = float(lengths[(v, u)])
        else:
            raise MissingLengthError(f"no length for edge {K.labels[u]}-{K.labels[v]}")
    return out


def _targets(space, lengths, edges):
    L = np.array([lengths[edge_key(u, v)] for u, v in edges], float)
    return L * L if space.kind == EUCLID else space.c(L)


def build_constraint_system(K: PseudoManifold, lengths: dict, space: ModelSpace,
                            pinned_facet=None) -> ConstraintSystem:
    """Pin a facet at its canonical realisation and constrain everything else.

    ``pinned_facet`` defaults to the lexicographically first facet.  Lengths are
    keyed by vertex-id pairs.
    """
    lengths = _check_lengths(K, lengths)
    if K.dim != space.n - 1:
        raise ShapeError(f"a {K.dim}-dimensional complex is not a hypersurface in {space}")
    if pinned_facet is None:
        pinned_facet = min(tuple(sorted(f)) for f in K.facets)
    pinned = tuple(sorted(pinned_facet))
    n = len(pinned)
    Lp = np.zeros((n, n))
    for i, j in itertools.combinations(range(n), 2):
        Lp[i, j] = Lp[j, i] = lengths[edge_key(pinned[i], pinned[j])]
    anchors = realize_simplex_from_lengths(Lp, space)

    m, d = K.n_vertices, space.ambient
    free = [v for v in range(m) if v not in pinned]
    var_index = tuple((v, c) for v in free for c in range(d))
    A = np.zeros((m, d, len(var_index)))
    b = np.zeros((m, d))
    for k, (v, c) in enumerate(var_index):
        A[v, c, k] = 1.0
    for i, v in enumerate(pinned):
        b[v] = anchors[i]
    pin_set = set(pinned)
    edges = [e for e in K.edges if not (e[0] in pin_set and e[1] in pin_set)]
    norms = np.array(free if space.curved else [], int)
    return ConstraintSystem(space, K, lengths, A, b, var_index, norms,
                            np.array(edges, int).reshape(-1, 2), _targets(space, lengths, edges),
                            pinned, anchors)


def evaluate(system: ConstraintSystem, z):
    """Residual vector and analytic Jacobian at ``z``."""
    X = system.positions(z)
    A = system.A
    w = system.space.metric
    eu, ev = system.edge_eqs[:, 0], system.edge_eqs[:, 1]
    Xu, Xv = X[eu], X[ev]
    if system.space.kind == EUCLID:
        D = Xu - Xv
        Fe = np.sum(D * D, axis=1) - system.targets
        Je = 2 * np.einsum("ed,edk->ek", D, A[eu] - A[ev])
    else:
        Fe = np.sum(Xu * w * Xv, axis=1) - system.targets
        Je = np.einsum("ed,edk->ek", Xv * w, A[eu]) + np.einsum("ed,edk->ek", Xu * w, A[ev])
    nv = system.norm_vertices
    if len(nv):
        Xn = X[nv]
        Fn = np.sum(Xn * w * Xn, axis=1) - 1.0
        Jn = 2 * np.einsum("ed,edk->ek", Xn * w, A[nv])
        return np.concatenate([Fn, Fe]), np.vstack([Jn, Je])
    return Fe, Je


def residual(system, z):
    return evaluate(system, z)[0]


def finite_difference_jacobian(system, z, eps=1e-6):
    z = np.asarray(z, float)
    J = np.empty((system.n_eqs, system.n_vars))
    for k in range(system.n_vars):
        dz = np.zeros_like(z)
        dz[k] = eps
        J[:, k] = (residual(system, z + dz) - residual(system, z - dz)) / (2 * eps)
    return J


@dataclass
class RigidityReport:
    kernel_dim: int
    min_singular_value: float
    singular_values: np.ndarray
    flex_basis: np.ndarray   # (n_vars, kernel_dim)
    residual: float

    @property
    def rigid(self) -> bool:
        return self.kernel_dim == 0

    def to_dict(self):
        return {"kernel_dim": self.kernel_dim, "min_singular_value": self.min_singular_value,
                "residual": self.residual, "rigid": self.rigid}


def _kernel(J, tol=KERNEL_TOL):
    _, s, Vt = np.linalg.svd(J)
    rank = int(np.sum(s > tol * s[0])) if s.size and s[0] > 0 else 0
    return s, Vt[rank:].T


def rigidity_test(system, z, tol=KERNEL_TOL, residual_tol=1e-8) -> RigidityReport:
    F, J = evaluate(system, z)
    r = float(np.max(np.abs(F))) if F.size else 0.0
    if r > residual_tol:
        raise NotOnVarietyError(f"residual {r:.3e} exceeds {residual_tol:g}")
    s, basis = _kernel(J, tol)
    return RigidityReport(basis.shape[1], float(s.min()) if s.size else 0.0, s, basis, r)


# ---------------------------------------------------------------------------
# degeneracy monitor


def _affine_rank(pts, tol):
    if len(pts) < 2:
        return 0
    s = np.linalg.svd(pts[1:] - pts[0], compute_uv=False)
    return int(np.sum(s > tol))


def _chart(P: Polyhedron):
    X = P.coords
    return X[:, 1:] / X[:, :1] if P.space.curved else X


def degeneracy_flags(P: Polyhedron, rel_tol=1e-8):
    """Non-fatal checks: facets of tiny measure and splittings of the complex
    into two parts meeting only inside an (n-2)-plane."""
    K = P.K
    Y = _chart(P)
    n = P.space.n
    E = np.array(K.edges)
    mean_edge = float(np.mean(np.linalg.norm(Y[E[:, 0]] - Y[E[:, 1]], axis=1)))
    thin = []
    for fi, f in enumerate(K.facets):
        M = Y[list(f[1:])] - Y[f[0]]
        vol = math.sqrt(max(np.linalg.det(M @ M.T), 0.0)) / math.factorial(n - 1)
        if vol < rel_tol * mean_edge ** (n - 1):
            thin.append(fi)
    tol = rel_tol * max(mean_edge, 1e-300)
    split = None
    for base in itertools.combinations(range(K.n_vertices), n - 1):
        B = Y[list(base)]
        if _affine_rank(B, tol) != n - 2:
            continue
        S = {v for v in range(K.n_vertices) if _affine_rank(np.vstack([B, Y[v]]), tol) <= n - 2}
        if _splits(K, S):
            split = sorted(S)
            break
    return {"thin_facets": thin, "split_plane_vertices": split}


def _splits(K, S):
    parent = list(range(K.n_facets))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    owner = {}
    for fi, f in enumerate(K.facets):
        for v in f:
            if v in S:
                continue
            if v in owner:
                parent[find(fi)] = find(owner[v])
            else:
                owner[v] = fi
    return len({find(i) for i in range(K.n_facets)}) > 1


# ---------------------------------------------------------------------------
# continuation


def _orient(t, ref):
    return -t if t @ ref < 0 else t


def _correct(system, z, tangent, tol, max_iter):
    F, J = evaluate(system, z)
    norm = np.max(np.abs(F))
    z0 = z.copy()
    for it in range(1, max_iter + 1):
        if norm < tol:
            return _polish(system, z, z0, tangent, F, J, norm), it - 1
        M = np.vstack([J, tangent])
        rhs = -np.concatenate([F, [tangent @ (z - z0)]])
        dz = np.linalg.lstsq(M, rhs, rcond=None)[0]
        lam = 1.0
        for _ in range(6):
            F2, J2 = evaluate(system, z + lam * dz)
            n2 = np.max(np.abs(F2))
            if n2 < norm:
                break
            lam /= 2
        z, F, J, norm = z + lam * dz, F2, J2, n2
    if norm < tol:
        return z, max_iter
    return None, max_iter


def _polish(system, z, z0, tangent, F, J, norm):
    """One extra Newton step once converged; kept only if it helps."""
    M = np.vstack([J, tangent])
    rhs = -np.concatenate([F, [tangent @ (z - z0)]])
    z2 = z + np.linalg.lstsq(M, rhs, rcond=None)[0]
    return z2 if np.max(np.abs(residual(system, z2))) < norm else z


def track_flex(system: ConstraintSystem, z0, step=0.02, max_steps=200, corrector_tol=1e-12,
               direction=1, min_step=1e-6, max_step=0.1, max_iter=12, max_arclength=None,
               monitor=True, guard=None):
    """Predictor-corrector continuation of the one-dimensional solution set.

    The predictor follows the unit kernel vector of the Jacobian, oriented by
    continuity; the corrector is Gauss-Newton on the hyperplane orthogonal to
    it.  The returned family is parametrised by arclength in variable space.
    ``guard(X_old, X_new)`` may veto a step (it is then retried at half size).
    """
    from .families import FlexFamily

    z = np.asarray(z0, float).copy()
    rep = rigidity_test(system, z, residual_tol=max(1e-8, corrector_tol))
    if rep.kernel_dim == 0:
        raise RigidError(f"no flex direction at the seed (min singular value {rep.min_singular_value:.3e})")
    if rep.kernel_dim > 1:
        raise BifurcationError(f"kernel dimension {rep.kernel_dim} at the seed")
    z, _ = _correct(system, z, rep.flex_basis[:, 0], corrector_tol, max_iter)
    if z is None:
        raise CorrectorDivergenceError("seed could not be projected onto the variety")
    t = rep.flex_basis[:, 0]
    i = int(np.argmax(np.abs(t)))
    t = t * (np.sign(t[i]) * (1 if direction >= 0 else -1))

    zs, arcs, res, flags = [z], [0.0], [float(np.max(np.abs(residual(system, z))))], []
    h, easy = min(step, max_step), 0

    def partial():
        return _tracked(system, arcs, zs, res, flags)

    if monitor:
        flags.append(degeneracy_flags(system.polyhedron(z)))
    while len(zs) <= max_steps:
        if max_arclength is not None and arcs[-1] >= max_arclength:
            break
        pred = z + h * t
        znew, its = _correct(system, pred, t, corrector_tol, max_iter)
        ok = znew is not None and np.linalg.norm(znew - pred) <= 0.3 * h
        if ok:
            _, J = evaluate(system, znew)
            s, basis = _kernel(J)
            if basis.shape[1] != 1:
                if h > 4 * min_step:
                    ok = False
                else:
                    raise BifurcationError(
                        f"kernel dimension {basis.shape[1]} after arclength {arcs[-1]:.6g}",
                        path=partial())
            else:
                tnew = _orient(basis[:, 0], t)
                ok = tnew @ t > 0.95
                if ok and guard is not None:
                    ok = bool(guard(system.positions(z), system.positions(znew)))
        if not ok:
            h /= 2
            easy = 0
            if h < min_step:
                raise CorrectorDivergenceError(
                    f"step fell below {min_step:g} after arclength {arcs[-1]:.6g}", path=partial())
            continue
        arcs.append(arcs[-1] + float(np.linalg.norm(znew - z)))
        z, t = znew, tnew
        zs.append(z)
        res.append(float(np.max(np.abs(residual(system, z)))))
        if monitor:
            flags.append(degeneracy_flags(system.polyhedron(z)))
        easy = easy + 1 if its <= 3 else 0
        if easy >= 3:
            h = min(h * 1.3, max_step)
            easy = 0
    return partial()


def _tracked(system, arcs, zs, res, flags):
    from .families import FlexFamily

    Z = np.array(zs)
    coords = np.array([system.positions(z) for z in Z])
    return FlexFamily("tracked", system.K, system.space, (0.0, arcs[-1]),
                      params=np.array(arcs), coords=coords,
                      meta={"system": system, "z": Z, "residuals": np.array(res),
                            "degeneracy": list(flags)})


# ---------------------------------------------------------------------------
# symmetry reduction


def symmetry_isometry(space: ModelSpace, kind: str) -> np.ndarray:
    """Canonical half-turn (line) or mirror (plane) acting on ambient coordinates."""
    d = space.ambient
    if kind == "line":
        diag = [-1.0, -1.0, 1.0] if space.kind == EUCLID else [1.0, -1.0, -1.0, 1.0]
    else:
        diag = [1.0, 1.0, -1.0] if space.kind == EUCLID else [1.0, 1.0, 1.0, -1.0]
    if len(diag) != d:
        raise SymmetryMismatchError("symmetry reduction is implemented in dimension 3")
    return np.diag(diag)


def _gauge(space, kind, rank, fixed):
    """Free coordinates of the ``rank``-th representative in canonical form."""
    d = space.ambient
    normal = d - 1 if kind == "plane" else None
    if space.kind == EUCLID:
        if kind == "line":
            drop = {1, 2} if rank == 0 else set()
        else:
            drop = {0, 1} if rank == 0 else ({1} if rank == 1 else set())
    else:
        if kind == "line":
            drop = {2, 3} if rank == 0 else set()
        else:
            drop = {1, 2} if rank == 0 else ({2} if rank == 1 else set())
    if fixed:
        drop = drop | {normal}
    return [c for c in range(d) if c not in drop]


@dataclass(frozen=True, eq=False)
class SymmetryReduction:
    system: ConstraintSystem       # reduced system (its positions() is the lift)
    involution: Involution
    R: np.ndarray
    full: ConstraintSystem

    def lift(self, z) -> np.ndarray:
        return self.system.positions(z)

    def full_residual(self, z) -> float:
        return float(np.max(np.abs(residual(self.full, self.full.pack(self.lift(z))))))


def symmetry_reduce(system: ConstraintSystem, involution: Involution) -> SymmetryReduction:
    K, space = system.K, system.space
    phi = involution.perm
    if involution.K is not K and involution.K.facets != K.facets:
        raise SymmetryMismatchError("involution belongs to a different complex")
    if involution.kind == "line":
        for v in range(K.n_vertices):
            if K.has_edge(v, phi[v]):
                raise SymmetryMismatchError(
                    f"[{K.labels[v]} {K.labels[phi[v]]}] is an edge; a line symmetry must swap non-adjacent vertices")
    L = system.lengths
    scale = max(L.values())
    for (u, v), l in L.items():
        l2 = L[edge_key(phi[u], phi[v])]
        if abs(l - l2) > 1e-9 * scale:
            raise SymmetryMismatchError(
                f"length of {K.labels[u]}-{K.labels[v]} ({l:.12g}) differs from its image ({l2:.12g})")
    R = symmetry_isometry(space, involution.kind)
    fixed = set(involution.fixed_vertices)
    reps = involution.representatives()
    if involution.kind == "plane":
        reps = sorted(reps, key=lambda v: (v not in fixed, v))
    var_index = []
    for rank, v in enumerate(reps):
        var_index += [(v, c) for c in _gauge(space, involution.kind, rank, v in fixed)]
    m, d = K.n_vertices, space.ambient
    A = np.zeros((m, d, len(var_index)))
    for k, (v, c) in enumerate(var_index):
        A[v, c, k] = 1.0
    for v in reps:
        if phi[v] != v:
            A[phi[v]] = np.einsum("ij,jk->ik", R, A[v])
    edges = involution.edge_orbits()
    norms = np.array(reps if space.curved else [], int)
    red = ConstraintSystem(space, K, L, A, np.zeros((m, d)), tuple(var_index), norms,
                           np.array(edges, int).reshape(-1, 2), _targets(space, L, edges),
                           meta={"reduced": involution.kind})
    return SymmetryReduction(red, involution, R, system)


def _to_model(space, p):
    p = np.asarray(p, float)
    if space.kind == EUCLID:
        return p
    r2 = float(p @ p)
    if space.kind == "sphere":
        return np.r_[math.sqrt(1 - r2), p]
    return np.r_[math.sqrt(1 + r2), p]


def symmetric_seed(space: ModelSpace, involution: Involution, rng=None, scale=0.6) -> Polyhedron:
    """Random placement in canonical symmetric form.

    Representatives get random chart points (respecting the gauge zeros), the
    partners are their images under the canonical isometry.
    """
    rng = np.random.default_rng(rng)
    K = involution.K
    R = symmetry_isometry(space, involution.kind)
    fixed = set(involution.fixed_vertices)
    reps = involution.representatives()
    if involution.kind == "plane":
        reps = sorted(reps, key=lambda v: (v not in fixed, v))
    X = np.zeros((K.n_vertices, space.ambient))
    off = 0 if space.kind == EUCLID else 1
    for rank, v in enumerate(reps):
        keep = _gauge(space, involution.kind, rank, v in fixed)
        p = np.zeros(space.n)
        for c in keep:
            if c - off >= 0:
                p[c - off] = rng.uniform(-1, 1) * scale
        if rank == 0 and involution.kind == "line":
            p[0] = scale * (0.6 + 0.4 * rng.uniform())
        X[v] = _to_model(space, p)
        X[involution.perm[v]] = R @ X[v]
    return Polyhedron(K, X, space)


def solve_reduced(red: SymmetryReduction, rng=None, tries=50, tol=1e-13):
    """Find some point of a reduced system by minimum-norm Gauss-Newton."""
    rng = np.random.default_rng(rng)
    sysr = red.system
    for _ in range(tries):
        P0 = symmetric_seed(sysr.space, red.involution, rng)
        z = sysr.pack(P0.coords)
        for _ in range(60):
            F, J = evaluate(sysr, z)
            if np.max(np.abs(F)) < tol:
                return z
            z = z - np.linalg.lstsq(J, F, rcond=None)[0]
            if not np.all(np.isfinite(z)):
                break
    raise CorrectorDivergenceError("no point found on the reduced variety")


def track_symmetric(red: SymmetryReduction, z0, **options):
    """Track a reduced system; the family carries lifted full coordinates."""
    fam = track_flex(red.system, z0, **options)
    fam.meta["reduction"] = red
    return fam


def track_plane_symmetric_octahedron(params=None, rng=0, **options):
    """Bricard octahedron of the second type by plane-symmetric continuation.

    ``params`` is ``None`` (random symmetric seed), a ``Polyhedron`` in
    canonical form, or a mapping of edge lengths keyed by vertex-id pairs.
    """
    from .complexes import cross_polytope_complex
    from .geomkit import Euclidean

    K = cross_polytope_complex(3)
    space = Euclidean(3)
    # a1 <-> b1, a2 <-> b2 mirrored, a3 and b3 in the mirror plane
    inv = Involution(K, (3, 4, 2, 0, 1, 5), "plane")
    if params is None:
        P = symmetric_seed(space, inv, rng)
        lengths = lengths_from_polyhedron(P)
    elif isinstance(params, Polyhedron):
        P, lengths = params, lengths_from_polyhedron(params)
    else:
        P, lengths = None, dict(params)
    full = build_constraint_system(K, lengths, space)
    red = symmetry_reduce(full, inv)
    z0 = red.system.pack(P.coords) if P is not None else solve_reduced(red, rng)
    options.setdefault("max_steps", 120)
    options.setdefault("max_step", 0.05)
    return track_symmetric(red, z0, **options)


def nearest_family_parameter(system: ConstraintSystem, family, z, u0, tol=1e-14, max_iter=30, h=1e-6):
    """Parameter ``u`` of a closed-form family whose sample, packed into
    ``system``'s variables, is nearest to ``z``.  Newton on the stationarity
    condition with a finite-difference derivative of the packed curve.

    Returns ``(u, distance)``.
    """
    z = np.asarray(z, float)

    def g(u):
        return system.pack(family.evaluate(u))

    u = float(u0)
    for _ in range(max_iter):
        gp = (g(u + h) - g(u - h)) / (2 * h)
        du = -((g(u) - z) @ gp) / (gp @ gp)
        u += du
        if abs(du) < tol:
            break
    return u, float(np.max(np.abs(g(u) - z)))
