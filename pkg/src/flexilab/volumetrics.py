"""Generalised oriented volume, winding numbers and the Schläfli variation.

Euclidean volumes are exact cone sums.  Winding numbers count signed crossings
of a ray (Euclidean), of the geodesic arc from ``x`` to a base point ``y``
(sphere), or of a ray in the Klein model (hyperbolic space, where geodesic
simplices become straight).  Monte Carlo integrates the winding number.
"""
from __future__ import annotations

import csv
import io
import json
import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np
from scipy.optimize import nnls

from .complexes import build_pseudo_manifold
from .errors import CoarsePathError, NotRealizableError, OnSurfaceError, RetryExhaustedError
from .geomkit import (
    EUCLID,
    HYPERBOLIC,
    SPHERE,
    ModelSpace,
    Polyhedron,
    Sphere,
    dihedral_angles,
    distance,
    ridges_of,
    simplex_volume,
)

BOUNDARY_TOL = 1e-9
MAX_RETRIES = 10


def generalized_volume_euclidean(P: Polyhedron) -> float:
    """Sum of det(x_1, ..., x_n) / n! over the oriented facets."""
    if P.space.kind != EUCLID:
        raise TypeError("cone-sum volume is Euclidean only")
    F = P.coords[np.array(P.K.facets)]
    return float(np.sum(np.linalg.det(F)) / math.factorial(P.space.n))


def _threads():
    env = os.environ.get("FLEXILAB_THREADS")
    if env:
        return max(1, int(env))
    return max(1, min(4, os.cpu_count() or 1))


# ---------------------------------------------------------------------------
# winding numbers


def _random_direction(rng, n):
    d = rng.normal(size=n)
    return d / np.linalg.norm(d)


def _ray_crossings(F, X, d, tol):
    """Signed crossings of rays x + t d (t > 0) with straight simplices.

    Returns (counts, ambiguous, on_surface) boolean/int arrays over points.
    """
    N, n = X.shape
    count = np.zeros(N, int)
    amb = np.zeros(N, bool)
    onsurf = np.zeros(N, bool)
    # sort by one coordinate across the ray so each facet only sees a slab
    Q, _ = np.linalg.qr(np.column_stack([d, np.eye(n)]))
    axis = Q[:, 1]
    proj = X @ axis
    order = np.argsort(proj, kind="stable")
    sproj = proj[order]
    margin = 1e-6 * max(1.0, float(np.abs(F).max()))
    for V in F:
        fp = V @ axis
        idx = order[np.searchsorted(sproj, fp.min() - margin):np.searchsorted(sproj, fp.max() + margin, "right")]
        if idx.size == 0:
            continue
        E = (V[1:] - V[0]).T
        M = np.column_stack([E, -d])
        sgn = np.sign(np.linalg.det(np.column_stack([d, E])))
        if abs(np.linalg.det(M)) < 1e-14 * max(1.0, np.abs(E).max()) ** (n - 1):
            # ray parallel to the facet plane; only points near the plane care
            normal, *_ = np.linalg.svd(E, full_matrices=True)
            nrm = normal[:, -1]
            amb[idx] |= np.abs((X[idx] - V[0]) @ nrm) < tol * max(1.0, np.abs(E).max())
            continue
        sol = (X[idx] - V[0]) @ np.linalg.inv(M).T
        beta = np.column_stack([1 - sol[:, :-1].sum(axis=1), sol[:, :-1]])
        t = sol[:, -1]
        bmin = beta.min(axis=1)
        inside = (bmin > tol) & (t > tol)
        count[idx] += np.where(inside, int(sgn), 0)
        touch = (bmin >= -tol) & (t >= -tol) & ~inside
        surf = touch & (np.abs(t) <= tol)
        onsurf[idx] |= surf
        amb[idx] |= touch & ~surf
    return count, amb, onsurf


def _sphere_crossings(F, X, y, tol):
    """Signed crossings of the arcs from x to y with spherical simplices."""
    N = X.shape[0]
    n = F.shape[1]
    count = np.zeros(N, int)
    amb = np.zeros(N, bool)
    onsurf = np.zeros(N, bool)
    par = (-1) ** (n - 1)
    for V in F:
        M = np.column_stack([V.T, -y])
        detM = np.linalg.det(M)
        if abs(detM) < 1e-14:
            amb[:] = True
            continue
        sgn = par * np.sign(np.linalg.det(np.column_stack([V.T, y])))
        w = X @ np.linalg.inv(M).T
        c, beta = w[:, :n], w[:, n]
        scale = np.abs(c).sum(axis=1) + np.abs(beta) + 1e-300
        cmin = c.min(axis=1) / scale
        bn = beta / scale
        inside = (cmin > tol) & (bn > tol)
        count += np.where(inside, int(sgn), 0)
        touch = (cmin >= -tol) & (bn >= -tol) & ~inside
        surf = touch & (np.abs(bn) <= tol)
        onsurf |= surf
        amb |= touch & ~surf
    return count, amb, onsurf


def _facet_array(P):
    return P.coords[np.array(P.K.facets)]


def _klein(X):
    return X[..., 1:] / X[..., :1]


def near_image(P: Polyhedron, y, tol=1e-6) -> bool:
    """Whether the sphere point ``y`` lies within ``tol`` of a facet cone."""
    for V in _facet_array(P):
        c, r = nnls(V.T, y)
        if r < tol and c.sum() > 0:
            return True
    return False


def default_base_point(P: Polyhedron, rng=None):
    y = np.zeros(P.space.ambient)
    y[0] = -1.0
    rng = np.random.default_rng(rng)
    while near_image(P, y):
        y = _random_direction(rng, P.space.ambient)
    return y


def winding_numbers(P: Polyhedron, X, y=None, rng=None) -> np.ndarray:
    """Winding numbers of ``P`` at many points (rows of ``X``)."""
    space = P.space
    X = np.atleast_2d(np.asarray(X, float))
    rng = np.random.default_rng(rng)
    F = _facet_array(P)
    if space.kind == SPHERE:
        y = default_base_point(P, rng) if y is None else np.asarray(y, float)
        count, amb, surf = _sphere_crossings(F, X, y, BOUNDARY_TOL)
    else:
        if space.kind == HYPERBOLIC:
            F, X = _klein(F), _klein(X)
        d = _random_direction(rng, X.shape[1])
        count, amb, surf = _ray_crossings(F, X, d, BOUNDARY_TOL)
    if surf.any():
        raise OnSurfaceError(f"{int(surf.sum())} query point(s) lie on the polyhedron")
    for _ in range(MAX_RETRIES):
        if not amb.any():
            return count
        idx = np.nonzero(amb)[0]
        if space.kind == SPHERE:
            y2 = _jittered_base(P, F, y, rng)
            c2, a2, s2 = _sphere_crossings(F, X[idx], y2, BOUNDARY_TOL)
        else:
            c2, a2, s2 = _ray_crossings(F, X[idx], _random_direction(rng, X.shape[1]), BOUNDARY_TOL)
        if s2.any():
            raise OnSurfaceError("query point lies on the polyhedron")
        count[idx] = c2
        amb[idx] = a2
    if amb.any():
        raise RetryExhaustedError(f"{int(amb.sum())} point(s) stayed degenerate after {MAX_RETRIES} retries")
    return count


def _jittered_base(P, F, y, rng):
    # a nearby base point in the same cell gives the same winding function
    for _ in range(MAX_RETRIES):
        y2 = y + 1e-3 * rng.normal(size=y.shape)
        y2 /= np.linalg.norm(y2)
        c, a, s = _sphere_crossings(F, y2[None, :], y, BOUNDARY_TOL)
        if not a[0] and not s[0] and c[0] == 0:
            return y2
    raise RetryExhaustedError("could not move the base point off degeneracies")


def winding_number(space: ModelSpace, P: Polyhedron, x, y=None, rng=None) -> int:
    if P.space != space:
        raise ValueError(f"polyhedron lives in {P.space}, not {space}")
    return int(winding_numbers(P, np.asarray(x, float)[None, :], y=y, rng=rng)[0])


@dataclass(eq=False)
class WindingField:
    P: Polyhedron
    y: np.ndarray | None = None
    seed: int = 0

    def __post_init__(self):
        if self.P.space.kind == SPHERE and self.y is None:
            self.y = default_base_point(self.P, self.seed)

    def __call__(self, X):
        out = winding_numbers(self.P, X, y=self.y, rng=self.seed)
        return out if np.ndim(X) > 1 else int(out[0])


# ---------------------------------------------------------------------------
# Monte Carlo


def cap_volume(n, r):
    """Volume of a geodesic ball of radius r in S^n."""
    from scipy.integrate import quad

    s = Sphere(n - 1).sigma
    return s * quad(lambda t: math.sin(t) ** (n - 1), 0.0, r)[0]


def _sample_cap(rng, center, r, n, N):
    # radial density proportional to sin^{n-1}; rejection against sin(r)
    thetas = []
    top = math.sin(r) ** (n - 1)
    need = N
    while need > 0:
        th = rng.uniform(0, r, size=int(need * 1.6) + 16)
        keep = th[rng.uniform(0, top, size=th.size) < np.sin(th) ** (n - 1)]
        thetas.append(keep[:need])
        need -= len(thetas[-1])
    theta = np.concatenate(thetas)
    U = rng.normal(size=(N, n + 1))
    U -= np.outer(U @ center, center)
    U /= np.linalg.norm(U, axis=1, keepdims=True)
    return np.cos(theta)[:, None] * center + np.sin(theta)[:, None] * U


class _Sampler:
    """Region, sampler and density weight for one Monte Carlo problem."""

    def __init__(self, P, y, rng):
        self.P = P
        space = P.space
        X = P.coords
        if space.kind == EUCLID:
            lo, hi = X.min(axis=0), X.max(axis=0)
            pad = 1e-3 * max(float(np.max(hi - lo)), 1e-12)
            self.lo, self.hi = lo - pad, hi + pad
            self.measure = float(np.prod(self.hi - self.lo))
            self.y = None
        elif space.kind == HYPERBOLIC:
            Kc = _klein(X)
            lo, hi = Kc.min(axis=0), Kc.max(axis=0)
            self.lo, self.hi = np.maximum(lo, -1), np.minimum(hi, 1)
            self.measure = float(np.prod(self.hi - self.lo))
            self.y = None
        else:
            n = space.n
            center = X.sum(axis=0)
            nc = np.linalg.norm(center)
            r = math.pi
            if nc > 1e-9:
                center = center / nc
                r = float(np.max(np.arccos(np.clip(X @ center, -1, 1))))
            self.cap = r < math.pi / 2 - 1e-6 and y is None
            if self.cap:
                self.center = center
                # stay clear of the polyhedron; points beyond the cap have winding 0
                self.r = min(r * 1.02 + 1e-9, math.pi / 2)
                self.measure = cap_volume(n, self.r)
                self.y = -center
            else:
                self.measure = space.sigma
                self.y = default_base_point(P, rng) if y is None else np.asarray(y, float)

    def draw(self, rng, N):
        space = self.P.space
        if space.kind == EUCLID:
            return rng.uniform(self.lo, self.hi, size=(N, space.n)), None
        if space.kind == HYPERBOLIC:
            k = rng.uniform(self.lo, self.hi, size=(N, space.n))
            r2 = np.sum(k * k, axis=1)
            ok = r2 < 1
            w = np.zeros(N)
            w[ok] = (1 - r2[ok]) ** (-(space.n + 1) / 2)
            X = np.zeros((N, space.n + 1))
            X[ok, 0] = 1 / np.sqrt(1 - r2[ok])
            X[ok, 1:] = k[ok] * X[ok, :1]
            X[~ok, 0] = 1e6  # far away, weight 0
            return X, w
        if self.cap:
            return _sample_cap(rng, self.center, self.r, space.n, N), None
        U = rng.normal(size=(N, space.n + 1))
        return U / np.linalg.norm(U, axis=1, keepdims=True), None


def _shard(args):
    sampler, seq, N, chunk = args
    rng = np.random.default_rng(seq)
    s1 = s2 = 0.0
    done = 0
    while done < N:
        m = min(chunk, N - done)
        X, w = sampler.draw(rng, m)
        lam = winding_numbers(sampler.P, X, y=sampler.y, rng=rng).astype(float)
        if w is not None:
            lam = lam * w
        s1 += float(lam.sum())
        s2 += float((lam * lam).sum())
        done += m
    return s1, s2


def wrap_sphere(V, sigma):
    """Representative of V modulo sigma in (-sigma/2, sigma/2]."""
    r = math.fmod(V, sigma)
    if r > sigma / 2:
        r -= sigma
    elif r <= -sigma / 2:
        r += sigma
    return r


def monte_carlo_volume(space: ModelSpace, P: Polyhedron, y=None, N=10 ** 6, seed=0, shards=8,
                       chunk=200_000):
    """Integral of the winding number by uniform sampling.

    Returns ``(estimate, std_error)``.  Shards draw from independent child
    seeds and are reduced in a fixed order, so the result does not depend on
    the number of threads.
    """
    if N < 1000:
        raise ValueError("N must be at least 1000")
    if P.space != space:
        raise ValueError(f"polyhedron lives in {P.space}, not {space}")
    root = np.random.SeedSequence(seed)
    sampler = _Sampler(P, y, np.random.default_rng(root.spawn(1)[0]))
    seqs = root.spawn(shards)
    sizes = [N // shards + (1 if i < N % shards else 0) for i in range(shards)]
    jobs = [(sampler, s, m, chunk) for s, m in zip(seqs, sizes)]
    with ThreadPoolExecutor(max_workers=_threads()) as ex:
        parts = list(ex.map(_shard, jobs))
    s1 = sum(p[0] for p in parts)
    s2 = sum(p[1] for p in parts)
    mean = s1 / N
    var = max(s2 / N - mean * mean, 0.0)
    est = mean * sampler.measure
    se = math.sqrt(var / N) * sampler.measure
    if space.kind == SPHERE:
        est = wrap_sphere(est, space.sigma)
    return est, se


# ---------------------------------------------------------------------------
# Schläfli


@dataclass(eq=False)
class SchlafliResult:
    delta_V: float
    trapezoid: float
    ridges: list
    terms: np.ndarray        # (steps, ridges): V_F * d(alpha_F) per step
    cumulative: np.ndarray   # (samples,)
    max_angle_step: float


def _ridge_volume(space, pts):
    if len(pts) == 2:
        return float(distance(space, pts[0], pts[1]))
    if len(pts) == 3:
        return simplex_volume(space, pts)
    raise NotImplementedError("ridge volumes are implemented for n = 3 and n = 4")


def angle_guard(K, space, max_change=0.04):
    """Step veto for ``track_flex``: refuse steps that turn any dihedral angle
    by more than ``max_change``."""
    ridges = ridges_of(K)

    def guard(X_old, X_new):
        a = dihedral_angles(Polyhedron(K, X_old, space), ridges)
        b = dihedral_angles(Polyhedron(K, X_new, space), ridges)
        d = (b - a + math.pi) % (2 * math.pi) - math.pi
        return float(np.max(np.abs(d))) <= max_change

    return guard


def schlafli_variation(space: ModelSpace, path, ridges=None, max_angle_step=0.05) -> SchlafliResult:
    """Volume change along a path of polyhedra from Schläfli's formula.

    ``path`` is a list of polyhedra (or a FlexFamily, whose default sweep is
    used).  Hyperbolic: dV = -1/(n-1) sum V_F d alpha_F; spherical: +1/(n-1).
    Composite trapezoid, then one Richardson step on the even sub-grid.
    """
    if space.kind == EUCLID:
        raise TypeError("Schläfli variation needs a curved space")
    polys = path.sample() if hasattr(path, "sample") else list(path)
    if len(polys) < 2:
        return SchlafliResult(0.0, 0.0, [], np.zeros((0, 0)), np.zeros(len(polys)), 0.0)
    ridges = ridges_of(polys[0].K) if ridges is None else list(ridges)
    alpha = np.array([dihedral_angles(P, ridges) for P in polys])
    vol = np.array([[_ridge_volume(space, P.coords[list(r)]) for r in ridges] for P in polys])
    dalpha = np.diff(alpha, axis=0)
    dalpha = (dalpha + math.pi) % (2 * math.pi) - math.pi
    worst = float(np.max(np.abs(dalpha))) if dalpha.size else 0.0
    if worst > max_angle_step:
        raise CoarsePathError(f"dihedral angle jumps by {worst:.3g} rad in one step (limit {max_angle_step})")
    sign = -1.0 if space.kind == HYPERBOLIC else 1.0
    coef = sign / (space.n - 1)
    terms = 0.5 * (vol[1:] + vol[:-1]) * dalpha
    steps = terms.sum(axis=1) * coef
    cumulative = np.concatenate([[0.0], np.cumsum(steps)])
    T1 = float(cumulative[-1])
    delta = T1
    nint = len(polys) - 1
    if nint >= 2 and nint % 2 == 0:
        d2 = dalpha[0::2] + dalpha[1::2]
        T2 = coef * float(np.sum(0.5 * (vol[2::2] + vol[:-2:2]) * d2))
        delta = T1 + (T1 - T2) / 3
    return SchlafliResult(delta, T1, ridges, terms, cumulative, worst)


# ---------------------------------------------------------------------------
# spherical counterexample


def _spherical_triangle_apex(p, q, lp, lq, side):
    """Point at distance lp from p and lq from q on the given side of arc pq."""
    G = np.array([[1.0, p @ q], [p @ q, 1.0]])
    ab = np.linalg.solve(G, [math.cos(lp), math.cos(lq)])
    base = ab[0] * p + ab[1] * q
    nrm = np.cross(p, q)
    nrm /= np.linalg.norm(nrm)
    g2 = 1.0 - base @ base
    if g2 < 0:
        raise NotRealizableError(f"no spherical triangle with sides ({lp}, {lq}, {math.acos(np.clip(p @ q, -1, 1))})")
    return base + side * math.sqrt(g2) * nrm


def _interior_angles(pts):
    k = len(pts)
    out = []
    for i in range(k):
        p, nxt, prv = pts[i], pts[(i + 1) % k], pts[i - 1]
        a = nxt - (nxt @ p) * p
        b = prv - (prv @ p) * p
        out.append(math.atan2(np.cross(a, b) @ p, a @ b) % (2 * math.pi))
    return np.array(out)


def spherical_flexible_quadrilateral(side_lengths, d):
    """Quadrilateral p1 p2 p3 p4 on the equatorial S^2 of S^3 with the given
    sides (p1p2, p2p3, p3p4, p4p1) and diagonal p1p3 = d.

    Returns the four points in R^4 (first coordinate 0) and the area, computed
    as interior-angle excess.
    """
    l1, l2, l3, l4 = (float(x) for x in side_lengths)
    d = float(d)
    for v in (l1, l2, l3, l4, d):
        if not 0 < v < math.pi:
            raise NotRealizableError(f"length {v} outside (0, pi)")
    p1 = np.array([1.0, 0.0, 0.0])
    p3 = np.array([math.cos(d), math.sin(d), 0.0])
    p2 = _spherical_triangle_apex(p1, p3, l1, l2, -1.0)
    p4 = _spherical_triangle_apex(p1, p3, l4, l3, +1.0)
    pts = np.array([p1, p2, p3, p4])
    area = float(np.sum(_interior_angles(pts)) - 2 * math.pi)
    return np.column_stack([np.zeros(4), pts]), area


def spherical_triangle_area(a, b, c):
    """L'Huilier's formula from the three side lengths."""
    s = (a + b + c) / 2
    t = math.tan(s / 2) * math.tan((s - a) / 2) * math.tan((s - b) / 2) * math.tan((s - c) / 2)
    return 4 * math.atan(math.sqrt(max(t, 0.0)))


def suspension_s3(base) -> Polyhedron:
    """Bipyramid in S^3 over a closed polygon on the equatorial S^2.

    Vertices are the polygon points then the poles (1,0,0,0), (-1,0,0,0).
    """
    base = np.asarray(base, float)
    k = len(base)
    if base.shape[1] != 4 or np.any(np.abs(base[:, 0]) > 1e-12):
        raise ValueError("base vertices must lie on the equatorial sphere x0 = 0")
    north, south = k, k + 1
    # orientation of the base around its mean direction decides the pattern
    m = base[:, 1:].sum(axis=0)
    turn = sum(np.linalg.det(np.array([base[i, 1:], base[(i + 1) % k, 1:], m])) for i in range(k))
    facets = []
    for i in range(k):
        j = (i + 1) % k
        if turn > 0:
            facets += [(i, north, j), (i, j, south)]
        else:
            facets += [(north, i, j), (j, i, south)]
    labels = tuple(range(k + 2))
    K = build_pseudo_manifold(facets, labels=labels)
    poles = np.array([[1.0, 0, 0, 0], [-1.0, 0, 0, 0]])
    return Polyhedron(K, np.vstack([base, poles]), Sphere(3))


def bipyramid_diagonal_range(side=0.6, margin=0.1):
    """Feasible diagonal interval for the equilateral quadrilateral, shrunk
    by ``margin`` of its length at both ends."""
    lo, hi = 0.0, min(2 * side, 2 * math.pi - 2 * side)
    w = hi - lo
    return lo + margin * w, hi - margin * w


def bipyramid_family(side=0.6, margin=0.1):
    """FlexFamily of suspensions over the flexing equilateral quadrilateral,
    parametrised by the diagonal."""
    from .families import FlexFamily

    lo, hi = bipyramid_diagonal_range(side, margin)

    def ev(d):
        pts, _ = spherical_flexible_quadrilateral([side] * 4, d)
        return suspension_s3(pts)

    P0 = ev(lo)
    return FlexFamily("suspension", P0.K, P0.space, (lo, hi), evaluator=ev,
                      meta={"side": side, "area": lambda d: spherical_flexible_quadrilateral([side] * 4, d)[1]})


# ---------------------------------------------------------------------------
# reports


@dataclass
class VolumeReport:
    method: str
    sweep: list
    volumes: list
    edge_dev: list
    max_deviation: float
    tolerance: float
    threshold: float
    verdict: str
    std_errors: list = field(default_factory=list)

    def to_dict(self):
        return asdict(self)

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2)

    def to_csv(self):
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["u", "V", "edge_dev"])
        for u, v, e in zip(self.sweep, self.volumes, self.edge_dev):
            w.writerow([f"{u:.17g}", f"{v:.17g}", f"{e:.17g}"])
        return buf.getvalue()


def bellows_report(family, sweep=None, method=None, tol=None, N=200_000, seed=0) -> VolumeReport:
    """Volume along a flex, with a constant / non-constant verdict.

    cone-sum (Euclidean): constant iff max |V - V0| < tol * (1 + |V0|), tol 1e-8.
    schlafli (curved): volumes are cumulative changes; constant iff < tol, tol 1e-6.
    monte-carlo: constant iff every |V - V0| < tol * pooled std error, tol 5.
    """
    space = family.space
    if method is None:
        method = "cone-sum" if space.kind == EUCLID else ("schlafli" if space.kind == HYPERBOLIC else "monte-carlo")
    sweep = family.default_sweep() if sweep is None else np.asarray(sweep, float)
    polys = [family.evaluate(u) for u in sweep]
    L0 = polys[0].edge_lengths()
    edev = [float(np.max(np.abs(P.edge_lengths() - L0) / L0)) for P in polys]
    ses = []
    if method == "cone-sum":
        tol = 1e-8 if tol is None else tol
        vols = np.array([generalized_volume_euclidean(P) for P in polys])
        diff = np.abs(vols - vols[0])
        threshold = tol * (1 + abs(vols[0]))
        worst = float(diff.max())
        constant = worst < threshold
    elif method == "schlafli":
        tol = 1e-6 if tol is None else tol
        res = schlafli_variation(space, polys)
        vols = res.cumulative
        worst = float(np.max(np.abs(vols)))
        threshold = tol
        constant = worst < threshold
    elif method == "monte-carlo":
        tol = 5.0 if tol is None else tol
        out = [monte_carlo_volume(space, P, N=N, seed=seed) for P in polys]
        vols = np.array([o[0] for o in out])
        ses = [o[1] for o in out]
        diff = vols - vols[0]
        if space.kind == SPHERE:
            diff = np.array([wrap_sphere(x, space.sigma) for x in diff])
        pooled = np.sqrt(np.array(ses) ** 2 + ses[0] ** 2)
        ratio = np.abs(diff) / np.where(pooled > 0, pooled, np.inf)
        worst = float(np.max(np.abs(diff)))
        threshold = float(tol * np.max(pooled))
        constant = bool(np.all(ratio[1:] < tol))
    else:
        raise ValueError(f"unknown method {method!r}")
    return VolumeReport(method, [float(u) for u in sweep], [float(v) for v in vols], edev,
                        worst, float(tol), float(threshold),
                        "constant" if constant else "non-constant", [float(s) for s in ses])
