"""Closed-form flexible cross-polytopes and Bricard octahedra.

Vertex ``i`` of every family is a_{i+1} and stays fixed; vertex ``n+i`` is
b_{i+1}(u).  Two closed forms are implemented:

* the rational family, where the half-angle tangents at the ridges of the
  fixed simplex are ``lambda_i * u``;
* the elliptic family, where they are ``lambda_i * dn(u - sigma_i)`` and the
  fixed simplex is forced by its normal Gram matrix.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np
from scipy.optimize import brentq

from .complexes import PseudoManifold, cross_polytope_complex
from .elliptica import BiquadraticRelation, jacobi, quarter_period
from .errors import (
    DegenerateFacetError,
    DegenerateParameterError,
    GramRealizationError,
    PhaseCollisionError,
    SpecError,
)
from .geomkit import (
    Euclidean,
    ModelSpace,
    Polyhedron,
    SimplexFrame,
    dihedral_angle,
    realize_from_normal_gram,
    simplex_frame,
)


def _check_lambdas(lam):
    lam = np.asarray(lam, float)
    if np.any(lam == 0):
        raise SpecError("all lambda_i must be nonzero")
    n = len(lam)
    scale = np.max(np.abs(lam))
    for i in range(n):
        for j in range(i + 1, n):
            if abs(abs(lam[i]) - abs(lam[j])) < 1e-12 * scale:
                raise SpecError(
                    f"lambda[{i}] = {lam[i]} and lambda[{j}] = {lam[j]} violate "
                    "λ_i ≠ ±λ_j"
                )
    return lam


@dataclass(frozen=True, eq=False)
class RationalFlexSpec:
    frame: SimplexFrame
    lam: np.ndarray

    def __post_init__(self):
        lam = _check_lambdas(self.lam)
        if len(lam) != self.frame.n:
            raise SpecError(f"{len(lam)} lambdas for a frame with n = {self.frame.n}")
        object.__setattr__(self, "lam", lam)

    @classmethod
    def from_vertices(cls, vertices, lam):
        return cls(simplex_frame(vertices), lam)

    @property
    def n(self):
        return self.frame.n

    def to_dict(self):
        return {"kind": "rational", "n": self.n, "lambda": self.lam.tolist(),
                "frame": self.frame.to_dict()}


def _assemble(frame, coef, prefactor_extra, moving):
    """Shared tail of both closed forms.

    ``coef[i, j]`` multiplies ``a_j / a_j-altitude`` (j != i); the i-th b vertex is
    the normalised combination plus ``moving[i]``.
    """
    n = frame.n
    A, alt = frame.vertices, frame.altitudes
    B = np.empty_like(A)
    for i in range(n):
        w = coef[i] / alt
        w[i] = 0.0
        s = 1.0 / alt[i] + w.sum()
        if abs(s) < 1e-12 / alt.min():
            raise DegenerateParameterError(f"prefactor of b_{i + 1} vanishes")
        B[i] = (A[i] / alt[i] + w @ A + moving[i]) / s
    return B


def rational_family_eval(spec: RationalFlexSpec, u: float) -> Polyhedron:
    fr, lam = spec.frame, spec.lam
    n = spec.n
    G = fr.gram
    coef = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                coef[i, j] = 2 * lam[i] * (lam[i] * G[i, j] - lam[j]) / (lam[i] ** 2 - lam[j] ** 2)
    tu = lam * u
    moving = (2 * tu[:, None] * (fr.m[None, :] - tu[:, None] * fr.normals)) / (tu[:, None] ** 2 + 1)
    B = _assemble(fr, coef, None, moving)
    return Polyhedron(cross_polytope_complex(n), np.vstack([fr.vertices, B]), Euclidean(n))


def rational_limit(spec: RationalFlexSpec) -> np.ndarray:
    """b_i as u -> +-infinity: the moving term tends to ``-2 n_i``."""
    fr, lam, n = spec.frame, spec.lam, spec.n
    G = fr.gram
    coef = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                coef[i, j] = 2 * lam[i] * (lam[i] * G[i, j] - lam[j]) / (lam[i] ** 2 - lam[j] ** 2)
    return _assemble(fr, coef, None, -2 * fr.normals)


@dataclass(frozen=True, eq=False)
class EllipticFlexSpec:
    k: float
    sigma: np.ndarray
    lam: np.ndarray

    def __post_init__(self):
        if not 0 < float(self.k) < 1:
            raise SpecError(f"modulus k = {self.k} must lie in (0, 1)")
        sigma = np.asarray(self.sigma, float)
        lam = np.asarray(self.lam, float)
        if sigma.shape != lam.shape or sigma.ndim != 1 or len(sigma) < 2:
            raise SpecError("sigma and lambda must be vectors of equal length n >= 2")
        if np.any(lam == 0):
            raise SpecError("all lambda_i must be nonzero")
        K = quarter_period(self.k)
        for i in range(len(sigma)):
            for j in range(i + 1, len(sigma)):
                r = (sigma[i] - sigma[j]) / K
                if abs(r - round(r)) < 1e-9:
                    raise PhaseCollisionError(
                        f"sigma[{i}] and sigma[{j}] coincide modulo K = {K:.12g}"
                    )
        object.__setattr__(self, "k", float(self.k))
        object.__setattr__(self, "sigma", sigma)
        object.__setattr__(self, "lam", lam)

    @property
    def n(self):
        return len(self.sigma)

    @property
    def K(self):
        return quarter_period(self.k)

    @cached_property
    def gram(self):
        return elliptic_gram(self)

    @cached_property
    def frame(self) -> SimplexFrame:
        return realize_from_normal_gram(self.gram)

    def to_dict(self):
        return {"kind": "elliptic", "n": self.n, "k": self.k,
                "sigma": self.sigma.tolist(), "lambda": self.lam.tolist()}


def elliptic_gram(spec: EllipticFlexSpec) -> np.ndarray:
    n, k, lam, sig = spec.n, spec.k, spec.lam, spec.sigma
    G = np.eye(n)
    for i in range(n):
        for j in range(i + 1, n):
            s, c, d = jacobi(sig[i] - sig[j], k)
            num = (lam[i] ** 2 + lam[j] ** 2) * c * c - (1 + (1 - k * k) * lam[i] ** 2 * lam[j] ** 2) * s * s
            G[i, j] = G[j, i] = num / (2 * lam[i] * lam[j] * d)
    return G


def elliptic_family_eval(spec: EllipticFlexSpec, u: float) -> Polyhedron:
    fr = spec.frame
    n, k, lam, sig = spec.n, spec.k, spec.lam, spec.sigma
    coef = np.zeros((n, n))
    for i in range(n):
        for j in range(n):
            if i != j:
                s, c, d = jacobi(sig[i] - sig[j], k)
                coef[i, j] = lam[i] * (c * c - (1 - k * k) * lam[j] ** 2 * s * s) / (lam[j] * d)
    t = lam * jacobi(u - sig, k)[2]
    moving = (2 * t[:, None] * fr.m[None, :] - 2 * (t * t)[:, None] * fr.normals) / (t * t + 1)[:, None]
    B = _assemble(fr, coef, None, moving)
    return Polyhedron(cross_polytope_complex(n), np.vstack([fr.vertices, B]), Euclidean(n))


def find_elliptic_spec(n, rng=None, k_range=(0.2, 0.9), lam_range=(0.3, 3.0), max_tries=20000):
    """Search for an admissible elliptic spec.

    ``k``, the phases and the first ``n-1`` lambdas are drawn at random; the last
    lambda is then solved for so that the Gram matrix is singular, and the
    candidate is accepted only if it passes the full realisability gate.
    """
    rng = np.random.default_rng(rng)
    grid = np.linspace(lam_range[0], lam_range[1], 120)
    for _ in range(max_tries):
        k = rng.uniform(*k_range)
        K = quarter_period(k)
        sigma = rng.uniform(0, 2 * K, n)
        head = rng.uniform(*lam_range, n - 1)

        def det(x):
            return np.linalg.det(elliptic_gram(_raw_spec(k, sigma, np.r_[head, x])))

        vals = np.array([det(x) for x in grid])
        for a in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) < 0)[0]:
            root = brentq(det, grid[a], grid[a + 1], xtol=1e-15, rtol=1e-15)
            try:
                spec = EllipticFlexSpec(k, sigma, np.r_[head, root])
                spec.frame
            except (GramRealizationError, SpecError):
                continue
            return spec
    raise SpecError(f"no admissible elliptic spec found for n = {n} in {max_tries} tries")


def _raw_spec(k, sigma, lam):
    spec = object.__new__(EllipticFlexSpec)
    object.__setattr__(spec, "k", k)
    object.__setattr__(spec, "sigma", np.asarray(sigma, float))
    object.__setattr__(spec, "lam", np.asarray(lam, float))
    return spec


# ---------------------------------------------------------------------------
# families


@dataclass(eq=False)
class FlexFamily:
    """A one-parameter path of polyhedra with fixed edge lengths.

    Closed-form families carry an ``evaluator``; tracked families carry the
    sample parameters (arclength) and coordinates produced by continuation.
    """

    kind: str
    K: PseudoManifold
    space: ModelSpace
    interval: tuple
    evaluator: Callable | None = None
    params: np.ndarray | None = None
    coords: np.ndarray | None = None
    spec: object = None
    meta: dict = field(default_factory=dict)

    def evaluate(self, u) -> Polyhedron:
        if self.evaluator is not None:
            return self.evaluator(u)
        i = int(np.searchsorted(self.params, u))
        if i < len(self.params) and math.isclose(self.params[i], u, rel_tol=0, abs_tol=1e-12):
            return Polyhedron(self.K, self.coords[i], self.space)
        if i > 0 and math.isclose(self.params[i - 1], u, rel_tol=0, abs_tol=1e-12):
            return Polyhedron(self.K, self.coords[i - 1], self.space)
        # between samples: linear interpolation, only approximately on the variety
        i = min(max(i, 1), len(self.params) - 1)
        w = (u - self.params[i - 1]) / (self.params[i] - self.params[i - 1])
        X = (1 - w) * self.coords[i - 1] + w * self.coords[i]
        return Polyhedron(self.K, X, self.space)

    def default_sweep(self, steps=81):
        if self.evaluator is None:
            return np.array(self.params)
        return np.linspace(self.interval[0], self.interval[1], steps)

    def sample(self, sweep=None):
        sweep = self.default_sweep() if sweep is None else sweep
        return [self.evaluate(u) for u in sweep]

    def edge_deviation(self, sweep=None):
        """Max relative edge-length change of every sample against the first."""
        polys = self.sample(sweep)
        L0 = polys[0].edge_lengths()
        return np.array([np.max(np.abs(P.edge_lengths() - L0) / L0) for P in polys])


def rational_family(spec: RationalFlexSpec, interval=(-4.0, 4.0)) -> FlexFamily:
    return FlexFamily("rational", cross_polytope_complex(spec.n), Euclidean(spec.n), tuple(interval),
                      evaluator=lambda u: rational_family_eval(spec, u), spec=spec)


def elliptic_family(spec: EllipticFlexSpec, interval=None) -> FlexFamily:
    interval = (0.0, 4 * spec.K) if interval is None else tuple(interval)
    spec.frame  # fail early if the Gram matrix is not realisable
    return FlexFamily("elliptic", cross_polytope_complex(spec.n), Euclidean(spec.n), interval,
                      evaluator=lambda u: elliptic_family_eval(spec, u), spec=spec)


def bricard_family(kind, params=None, **track_options) -> FlexFamily:
    """Bricard octahedra: ``I`` line-symmetric (elliptic closed form), ``II``
    plane-symmetric (tracked), ``III`` skew (rational closed form)."""
    kind = {1: "I", 2: "II", 3: "III"}.get(kind, str(kind).upper())
    if kind == "I":
        if not isinstance(params, EllipticFlexSpec) or params.n != 3:
            raise SpecError("type I needs an EllipticFlexSpec with n = 3")
        fam = elliptic_family(params)
    elif kind == "III":
        if not isinstance(params, RationalFlexSpec) or params.n != 3:
            raise SpecError("type III needs a RationalFlexSpec with n = 3")
        fam = rational_family(params)
    elif kind == "II":
        from .confspace import track_plane_symmetric_octahedron

        fam = track_plane_symmetric_octahedron(params, **track_options)
    else:
        raise SpecError(f"unknown Bricard type {kind!r}")
    fam.meta["bricard_type"] = kind
    return fam


def common_bisector_deviation(P: Polyhedron) -> float:
    """How far the three diagonals of an octahedron are from sharing a common
    perpendicular bisector line (0 for a line-symmetric octahedron)."""
    X = P.coords
    n = P.space.n
    if n != 3 or X.shape[0] != 6:
        raise ValueError("defined for octahedra in R^3")
    D = X[3:] - X[:3]
    M = (X[3:] + X[:3]) / 2
    Dn = D / np.linalg.norm(D, axis=1, keepdims=True)
    _, s, Vt = np.linalg.svd(Dn)
    axis = Vt[-1]
    perp = s[-1]
    # midpoints projected along the axis must coincide
    Q = M - np.outer(M @ axis, axis)
    scale = max(1.0, float(np.max(np.abs(X))))
    spread = np.max(np.linalg.norm(Q - Q.mean(axis=0), axis=1)) / scale
    return float(max(perp, spread))


# ---------------------------------------------------------------------------
# half-angle tangents


@dataclass(eq=False)
class TangentProfile:
    sweep: np.ndarray
    ridges: list
    t: np.ndarray       # (samples, ridges); NaN where the sample is flat
    flat: np.ndarray    # bool mask, same shape


def cross_polytope_ridges(n):
    """The ridges F_i = [a_1 .. a_i-hat .. a_n] of the fixed simplex."""
    return [tuple(j for j in range(n) if j != i) for i in range(n)]


def tangent_profile(family: FlexFamily, ridges=None, sweep=None, flat_tol=1e-9) -> TangentProfile:
    sweep = family.default_sweep() if sweep is None else np.asarray(sweep, float)
    if ridges is None:
        ridges = cross_polytope_ridges(family.space.n)
    t = np.full((len(sweep), len(ridges)), np.nan)
    flat = np.zeros(t.shape, bool)
    for s, u in enumerate(sweep):
        P = family.evaluate(u)
        for r, ridge in enumerate(ridges):
            try:
                a = dihedral_angle(P, ridge)
            except DegenerateFacetError:
                flat[s, r] = True
                continue
            if min(a, 2 * math.pi - a) < flat_tol:
                flat[s, r] = True
                continue
            t[s, r] = math.tan(a / 2)
    return TangentProfile(np.asarray(sweep), list(ridges), t, flat)


def normalize_tangents(t, reference):
    """Per column, pick direct (t / ref) or inverse (t * ref) proportionality,
    whichever is more nearly constant.  Returns (ratios, modes, spreads)."""
    t = np.atleast_2d(np.asarray(t, float))
    ref = np.atleast_2d(np.asarray(reference, float))
    if ref.shape != t.shape:
        ref = np.broadcast_to(ref.reshape(len(t), -1), t.shape)
    ratios, modes, spreads = [], [], []
    for j in range(t.shape[1]):
        ok = np.isfinite(t[:, j]) & np.isfinite(ref[:, j]) & (ref[:, j] != 0)
        best = None
        for mode, r in (("direct", t[ok, j] / ref[ok, j]), ("inverse", t[ok, j] * ref[ok, j])):
            spread = float(np.ptp(r) / max(np.max(np.abs(r)), 1e-300))
            if best is None or spread < best[2]:
                best = (mode, r, spread)
        full = np.full(len(t), np.nan)
        full[ok] = best[1]
        ratios.append(full)
        modes.append(best[0])
        spreads.append(best[2])
    return np.column_stack(ratios), modes, np.array(spreads)


def fit_biquadratic(ti, tj):
    """Least-squares biquadratic relation through samples of (t_i, t_j).

    Returns the unit-norm relation, the max residual of the normalised design
    and the dimension of the (numerical) solution space.
    """
    ti = np.asarray(ti, float)
    tj = np.asarray(tj, float)
    ok = np.isfinite(ti) & np.isfinite(tj)
    ti, tj = ti[ok], tj[ok]
    X = np.column_stack([ti * ti * tj * tj, ti * ti, 2 * ti * tj, tj * tj, np.ones_like(ti)])
    rows = np.linalg.norm(X, axis=1, keepdims=True)
    Xn = X / rows
    _, s, Vt = np.linalg.svd(Xn, full_matrices=False)
    v = Vt[-1]
    rel = BiquadraticRelation(*v).normalized()
    resid = float(np.max(np.abs(Xn @ rel.as_array())))
    null_dim = int(np.sum(s < 1e-8 * s[0]))
    return rel, resid, null_dim
