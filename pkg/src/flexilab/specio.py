"""JSON / CSV ingestion and export for specs, meshes and trajectories.

Fixtures bundled with the package are addressed as ``@name`` (the file
``data/name.json``).
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

import numpy as np

from .complexes import (
    Involution,
    antipodal_involution,
    cross_polytope_complex,
    pseudo_manifold_from_dict,
)
from .errors import ComplexError, FlexError, ParseError, ValidationError
from .families import (
    EllipticFlexSpec,
    FlexFamily,
    RationalFlexSpec,
    elliptic_family,
    rational_family,
)
from .geomkit import Polyhedron, simplex_frame, space_from_name

FORMATS = ("json", "csv")


def fixture_names():
    return sorted(p.name[:-5] for p in resources.files("flexilab").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


def read_text(path) -> tuple[str, str]:
    """Contents and display name; ``@name`` reads a bundled fixture."""
    path = str(path)
    if path.startswith("@"):
        res = resources.files("flexilab").joinpath("data").joinpath(path[1:] + ".json")
        if not res.is_file():
            raise ParseError(f"unknown fixture {path}; available: {', '.join(fixture_names())}")
        return res.read_text(), path
    p = Path(path)
    if not p.is_file():
        raise ParseError(f"{path}: no such file")
    return p.read_text(), path


def load_json(path):
    text, name = read_text(path)
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{name}:{exc.lineno}:{exc.colno}: {exc.msg}") from None


def _field(d, key, where, kind=None):
    if key not in d:
        raise ValidationError(f"{where}: missing field '{key}'")
    v = d[key]
    if kind == "vector":
        try:
            arr = np.asarray(v, float)
        except (TypeError, ValueError):
            raise ValidationError(f"{where}: field '{key}' must be a list of numbers") from None
        if arr.ndim != 1:
            raise ValidationError(f"{where}: field '{key}' must be a flat list")
        return arr
    if kind == "matrix":
        try:
            arr = np.asarray(v, float)
        except (TypeError, ValueError):
            raise ValidationError(f"{where}: field '{key}' must be a list of number lists") from None
        if arr.ndim != 2:
            raise ValidationError(f"{where}: field '{key}' must be a matrix")
        return arr
    if kind == "number":
        if isinstance(v, bool) or not isinstance(v, (int, float)):
            raise ValidationError(f"{where}: field '{key}' must be a number")
        return float(v)
    return v


# ---------------------------------------------------------------------------
# specs


@dataclass(frozen=True)
class SymmetricTrackSpec:
    """A symmetric octahedron seed tracked through its reduced system."""

    space: str = "euclid"
    symmetry: str = "line"
    seed: int = 0
    steps: int = 200
    max_step: float = 0.05


@dataclass(frozen=True)
class BipyramidSpec:
    side: float = 0.6
    margin: float = 0.1


def spec_from_dict(d, where="spec"):
    if not isinstance(d, dict):
        raise ValidationError(f"{where}: expected a JSON object")
    kind = d.get("kind")
    try:
        if kind == "rational":
            lam = _field(d, "lambda", where, "vector")
            frame = _field(d, "frame", where)
            if not isinstance(frame, dict):
                raise ValidationError(f"{where}: field 'frame' must be an object with 'vertices'")
            V = _field(frame, "vertices", where + ".frame", "matrix")
            spec = RationalFlexSpec(simplex_frame(V), lam)
        elif kind == "elliptic":
            spec = EllipticFlexSpec(_field(d, "k", where, "number"), _field(d, "sigma", where, "vector"),
                                    _field(d, "lambda", where, "vector"))
            spec.frame
        elif kind == "symmetric":
            spec = SymmetricTrackSpec(str(d.get("space", "euclid")), str(d.get("symmetry", "line")),
                                      int(d.get("seed", 0)), int(d.get("steps", 200)),
                                      float(d.get("max_step", 0.05)))
            if spec.symmetry not in ("line", "plane"):
                raise ValidationError(f"{where}: field 'symmetry' must be 'line' or 'plane'")
            space_from_name(spec.space, 3)
        elif kind == "bipyramid":
            spec = BipyramidSpec(float(d.get("side", 0.6)), float(d.get("margin", 0.1)))
        else:
            raise ValidationError(f"{where}: field 'kind' must be rational, elliptic, symmetric or bipyramid (got {kind!r})")
    except ValidationError:
        raise
    except (FlexError, ValueError) as exc:
        raise ValidationError(f"{where}: {exc}") from None
    if "n" in d and kind in ("rational", "elliptic") and int(d["n"]) != spec.n:
        raise ValidationError(f"{where}: declared n = {d['n']} but the data has n = {spec.n}")
    return spec


def spec_to_dict(spec):
    if isinstance(spec, (RationalFlexSpec, EllipticFlexSpec)):
        return spec.to_dict()
    if isinstance(spec, SymmetricTrackSpec):
        return {"kind": "symmetric", **spec.__dict__}
    if isinstance(spec, BipyramidSpec):
        return {"kind": "bipyramid", **spec.__dict__}
    raise TypeError(f"cannot export {type(spec).__name__}")


def family_from_spec(spec) -> FlexFamily:
    if isinstance(spec, RationalFlexSpec):
        return rational_family(spec)
    if isinstance(spec, EllipticFlexSpec):
        return elliptic_family(spec)
    if isinstance(spec, BipyramidSpec):
        from .volumetrics import bipyramid_family

        return bipyramid_family(spec.side, spec.margin)
    if isinstance(spec, SymmetricTrackSpec):
        return symmetric_track(spec)
    raise TypeError(f"no family for {type(spec).__name__}")


def symmetric_track(spec: SymmetricTrackSpec) -> FlexFamily:
    from .confspace import (
        build_constraint_system,
        lengths_from_polyhedron,
        symmetric_seed,
        symmetry_reduce,
        track_symmetric,
    )
    from .volumetrics import angle_guard

    K = cross_polytope_complex(3)
    space = space_from_name(spec.space, 3)
    if spec.symmetry == "line":
        inv = antipodal_involution(K, "line")
    else:
        inv = Involution(K, (3, 4, 2, 0, 1, 5), "plane")
    P = symmetric_seed(space, inv, spec.seed)
    full = build_constraint_system(K, lengths_from_polyhedron(P), space)
    red = symmetry_reduce(full, inv)
    guard = angle_guard(K, space) if space.curved else None
    fam = track_symmetric(red, red.system.pack(P), max_steps=spec.steps, max_step=spec.max_step,
                          guard=guard, monitor=False)
    fam.spec = spec
    return fam


# ---------------------------------------------------------------------------
# meshes


@dataclass(eq=False)
class Mesh:
    """A complex with optional coordinates and optional edge lengths."""

    K: object
    space: object
    coords: np.ndarray | None = None
    lengths: dict = field(default_factory=dict)
    declared_space: bool = True

    def polyhedron(self) -> Polyhedron:
        if self.coords is None:
            raise ValidationError("mesh has no 'coords'")
        return Polyhedron(self.K, self.coords, self.space)


def mesh_from_dict(d, where="mesh") -> Mesh:
    for key in ("vertices", "facets"):
        _field(d, key, where)
    try:
        K = pseudo_manifold_from_dict(d, reorient=bool(d.get("reorient", False)))
    except ComplexError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    n = int(d.get("n", K.dim + 1))
    try:
        space = space_from_name(d.get("space", "euclid"), n)
    except ValueError as exc:
        raise ValidationError(f"{where}: {exc}") from None
    coords = None
    if "coords" in d:
        coords = _field(d, "coords", where, "matrix")
        if coords.shape != (K.n_vertices, space.ambient) and "space" in d:
            raise ValidationError(
                f"{where}: field 'coords' has shape {coords.shape}, expected {(K.n_vertices, space.ambient)}")
    lengths = {}
    index = {str(lab): i for i, lab in enumerate(K.labels)}
    for key, val in d.get("lengths", {}).items():
        parts = str(key).split("-")
        if len(parts) != 2 or parts[0] not in index or parts[1] not in index:
            raise ValidationError(f"{where}: length key {key!r} is not 'u-v' with known vertices")
        u, v = index[parts[0]], index[parts[1]]
        lengths[(min(u, v), max(u, v))] = float(val)
    return Mesh(K, space, coords, lengths, "space" in d)


def mesh_to_dict(P: Polyhedron, with_lengths=False):
    d = P.to_dict()
    if with_lengths:
        d["lengths"] = {f"{P.K.labels[u]}-{P.K.labels[v]}": float(l)
                        for (u, v), l in zip(P.K.edges, P.edge_lengths())}
    return d


def load_spec(path):
    """A family spec, a mesh, or a RunSpec, depending on the document."""
    d = load_json(path)
    if isinstance(d, dict) and "command" in d:
        return runspec_from_dict(d, str(path))
    if isinstance(d, dict) and "facets" in d:
        return mesh_from_dict(d, str(path))
    return spec_from_dict(d, str(path))


# ---------------------------------------------------------------------------
# run specs


@dataclass(frozen=True)
class RunSpec:
    command: str
    inputs: tuple = ()
    space: str = "euclid"
    u_from: float | None = None
    u_to: float | None = None
    steps: int = 81
    seed: int = 0
    tol: float | None = None
    out: str | None = None
    fmt: str = "json"
    expect: str | None = None
    options: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.steps < 2:
            raise ValidationError(f"steps must be >= 2 (got {self.steps})")
        if self.u_from is not None and self.u_to is not None and not self.u_from < self.u_to:
            raise ValidationError(f"empty range [{self.u_from}, {self.u_to}]")
        if self.tol is not None and not self.tol > 0:
            raise ValidationError(f"tolerance must be positive (got {self.tol})")
        if self.fmt not in FORMATS:
            raise ValidationError(f"format must be one of {FORMATS} (got {self.fmt!r})")
        if self.expect not in (None, "constant", "non-constant"):
            raise ValidationError(f"expect must be 'constant' or 'non-constant' (got {self.expect!r})")


def runspec_from_dict(d, where="run"):
    known = {"command", "inputs", "space", "from", "to", "steps", "seed", "tol", "out", "format", "expect"}
    try:
        return RunSpec(
            command=str(_field(d, "command", where)),
            inputs=tuple(d.get("inputs", ())),
            space=str(d.get("space", "euclid")),
            u_from=d.get("from"),
            u_to=d.get("to"),
            steps=int(d.get("steps", 81)),
            seed=int(d.get("seed", 0)),
            tol=d.get("tol"),
            out=d.get("out"),
            fmt=str(d.get("format", "json")),
            expect=d.get("expect"),
            options={k: v for k, v in d.items() if k not in known},
        )
    except (TypeError, ValueError) as exc:
        if isinstance(exc, ValidationError):
            raise ValidationError(f"{where}: {exc}") from None
        raise ValidationError(f"{where}: {exc}") from None


# ---------------------------------------------------------------------------
# trajectories


def _fmt(x):
    return f"{x:.17g}"


def trajectory_header(K, space):
    cols = []
    for lab in K.labels:
        cols += [f"{lab}_{c}" for c in range(space.ambient)]
    return cols


def trajectory_to_csv(params, coords, K, space, param_name="u"):
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["step", param_name] + trajectory_header(K, space))
    for i, (u, X) in enumerate(zip(params, coords)):
        w.writerow([i, _fmt(u)] + [_fmt(x) for x in np.ravel(X)])
    return buf.getvalue()


def trajectory_to_dict(params, coords, K, space, param_name="u"):
    return {"complex": K.to_dict(), "space": space.kind, "n": space.n, "parameter": param_name,
            "params": [float(u) for u in params], "coords": np.asarray(coords).tolist()}


def load_trajectory(path, K=None, space=None) -> FlexFamily:
    """Re-ingest an exported trajectory (JSON, or CSV with ``K`` and ``space``)."""
    text, name = read_text(path)
    if name.endswith(".csv"):
        if K is None or space is None:
            raise ValidationError("CSV trajectories need the complex and space")
        rows = list(csv.reader(io.StringIO(text)))
        data = np.array([[float(x) for x in r[1:]] for r in rows[1:]])
        params = data[:, 0]
        coords = data[:, 1:].reshape(len(params), K.n_vertices, space.ambient)
    else:
        try:
            d = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"{name}:{exc.lineno}:{exc.colno}: {exc.msg}") from None
        K = pseudo_manifold_from_dict(d["complex"])
        space = space_from_name(d["space"], int(d["n"]))
        params = np.array(d["params"], float)
        coords = np.array(d["coords"], float)
    return FlexFamily("tracked", K, space, (float(params[0]), float(params[-1])),
                      params=params, coords=coords)
