"""Command-line front end.

Exit codes: 0 success (and, for ``verify``, the expected verdict), 1 verdict
mismatch, 2 errors.
"""
from __future__ import annotations

import argparse
import json
import sys

import numpy as np

from . import specio
from .errors import FlexError
from .families import (
    EllipticFlexSpec,
    RationalFlexSpec,
    fit_biquadratic,
    normalize_tangents,
    tangent_profile,
)
from .specio import RunSpec


def _emit(spec: RunSpec, text: str):
    if spec.out:
        with open(spec.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _dump(obj):
    return json.dumps(obj, indent=2) + "\n"


def _sweep(spec: RunSpec, fam):
    lo = fam.interval[0] if spec.u_from is None else spec.u_from
    hi = fam.interval[1] if spec.u_to is None else spec.u_to
    if not lo < hi:
        raise specio.ValidationError(f"empty range [{lo}, {hi}]")
    return np.linspace(lo, hi, spec.steps)


def _input(spec: RunSpec, i=0):
    if len(spec.inputs) <= i:
        raise specio.ValidationError(f"command '{spec.command}' needs an input file")
    obj = specio.load_spec(spec.inputs[i])
    if isinstance(obj, specio.Mesh) and not obj.declared_space:
        obj.space = specio.space_from_name(spec.space, obj.space.n)
    return obj


def _as_family(obj):
    if isinstance(obj, specio.Mesh):
        raise specio.ValidationError("expected a family spec, got a mesh")
    return specio.family_from_spec(obj)


def _as_polyhedron(spec, obj):
    if isinstance(obj, specio.Mesh):
        return obj.polyhedron()
    fam = specio.family_from_spec(obj)
    u = spec.options.get("at")
    if u is None:
        u = 0.5 * (fam.interval[0] + fam.interval[1]) if fam.evaluator else fam.params[0]
    return fam.evaluate(float(u))


def cmd_construct(spec):
    obj = _input(spec)
    out = {"spec": specio.spec_to_dict(obj)} if not isinstance(obj, specio.Mesh) else {}
    if isinstance(obj, EllipticFlexSpec):
        out["gram"] = obj.gram.tolist()
        out["frame"] = obj.frame.to_dict()
    P = _as_polyhedron(spec, obj)
    out["polyhedron"] = specio.mesh_to_dict(P, with_lengths=True)
    _emit(spec, _dump(out))
    return 0


def cmd_sweep(spec):
    fam = _as_family(_input(spec))
    sweep = fam.default_sweep() if fam.evaluator is None else _sweep(spec, fam)
    coords = np.array([fam.evaluate(u).coords for u in sweep])
    name = "arclength" if fam.evaluator is None else "u"
    if spec.fmt == "csv":
        _emit(spec, specio.trajectory_to_csv(sweep, coords, fam.K, fam.space, name))
    else:
        _emit(spec, _dump(specio.trajectory_to_dict(sweep, coords, fam.K, fam.space, name)))
    return 0


def cmd_track(spec):
    from .confspace import build_constraint_system, lengths_from_polyhedron, track_flex

    obj = _input(spec)
    if isinstance(obj, specio.SymmetricTrackSpec):
        fam = specio.symmetric_track(obj)
    else:
        P = _as_polyhedron(spec, obj)
        system = build_constraint_system(P.K, lengths_from_polyhedron(P), P.space)
        fam = track_flex(system, system.pack(P), max_steps=spec.steps - 1,
                         step=float(spec.options.get("step", 0.02)),
                         corrector_tol=spec.tol or 1e-12, monitor=False)
    if spec.fmt == "csv":
        _emit(spec, specio.trajectory_to_csv(fam.params, fam.coords, fam.K, fam.space, "arclength"))
    else:
        d = specio.trajectory_to_dict(fam.params, fam.coords, fam.K, fam.space, "arclength")
        d["residuals"] = [float(r) for r in fam.meta["residuals"]]
        _emit(spec, _dump(d))
    return 0


def cmd_rigidity(spec):
    from .confspace import build_constraint_system, lengths_from_polyhedron, rigidity_test

    P = _as_polyhedron(spec, _input(spec))
    system = build_constraint_system(P.K, lengths_from_polyhedron(P), P.space)
    rep = rigidity_test(system, system.pack(P))
    out = rep.to_dict()
    out.update(n_vars=system.n_vars, n_eqs=system.n_eqs)
    _emit(spec, _dump(out))
    return 0


def cmd_volume(spec):
    from .volumetrics import generalized_volume_euclidean, monte_carlo_volume

    P = _as_polyhedron(spec, _input(spec))
    method = spec.options.get("method") or ("cone-sum" if not P.space.curved else "monte-carlo")
    out = {"method": method, "space": P.space.kind}
    if method == "cone-sum":
        out["volume"] = generalized_volume_euclidean(P)
    else:
        est, se = monte_carlo_volume(P.space, P, N=int(spec.options.get("N", 10 ** 5)), seed=spec.seed)
        out.update(volume=est, std_error=se)
    _emit(spec, _dump(out))
    return 0


def cmd_verify_bellows(spec):
    from .volumetrics import bellows_report

    fam = _as_family(_input(spec))
    sweep = None if fam.evaluator is None else _sweep(spec, fam)
    rep = bellows_report(fam, sweep, method=spec.options.get("method"), tol=spec.tol,
                         N=int(spec.options.get("N", 200_000)), seed=spec.seed)
    _emit(spec, rep.to_csv() if spec.fmt == "csv" else rep.to_json() + "\n")
    expect = spec.expect or "constant"
    return 0 if rep.verdict == expect else 1


def cmd_verify_biquad(spec):
    from .elliptica import biquad_coefficients, jacobi

    obj = _input(spec)
    if not isinstance(obj, (RationalFlexSpec, EllipticFlexSpec)):
        raise specio.ValidationError("verify biquad needs a rational or elliptic family spec")
    fam = specio.family_from_spec(obj)
    sweep = _sweep(spec, fam)
    tol = spec.tol or 1e-8
    prof = tangent_profile(fam, sweep=sweep)
    ok = ~np.any(prof.flat, axis=1)
    t = prof.t[ok]
    u = prof.sweep[ok]
    out = {"kind": fam.kind, "samples": int(ok.sum()), "tolerance": tol, "pairs": []}
    if isinstance(obj, RationalFlexSpec):
        ref = np.repeat(u[:, None], t.shape[1], axis=1)
    else:
        ref = np.array([jacobi(x - obj.sigma, obj.k)[2] for x in u])
    ratios, modes, spreads = normalize_tangents(t, ref)
    out["modes"] = modes
    out["spreads"] = spreads.tolist()
    passed = bool(np.all(spreads < tol))
    if isinstance(obj, EllipticFlexSpec):
        T = ref  # normalised tangents are exactly the dn columns
        for i in range(obj.n - 1):
            rel, resid, _ = fit_biquadratic(T[:, i], T[:, i + 1])
            want = biquad_coefficients(obj.sigma[i + 1] - obj.sigma[i], obj.k).normalized()
            err = float(np.max(np.abs(rel.as_array() - want.as_array())))
            out["pairs"].append({"i": i, "j": i + 1, "fit": rel.as_array().tolist(),
                                 "residual": resid, "coefficient_error": err})
            passed &= resid < tol and err < 1e-6
    out["verdict"] = "pass" if passed else "fail"
    _emit(spec, _dump(out))
    return 0 if passed else 1


COMMANDS = {
    "construct": cmd_construct,
    "sweep": cmd_sweep,
    "track": cmd_track,
    "rigidity": cmd_rigidity,
    "volume": cmd_volume,
    "verify bellows": cmd_verify_bellows,
    "verify biquad": cmd_verify_biquad,
}


def run(spec: RunSpec) -> int:
    if spec.command not in COMMANDS:
        print(f"error: unknown command {spec.command!r}", file=sys.stderr)
        return 2
    try:
        return COMMANDS[spec.command](spec)
    except (FlexError, OSError, ValueError, KeyError, TypeError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2


def _common(p):
    p.add_argument("input", help="spec / mesh JSON or @fixture")
    p.add_argument("--space", default="euclid", choices=["euclid", "sphere", "hyperbolic"])
    p.add_argument("--from", dest="u_from", type=float)
    p.add_argument("--to", dest="u_to", type=float)
    p.add_argument("--steps", type=int, default=81)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--tol", type=float)
    p.add_argument("--out")
    p.add_argument("--format", dest="fmt", default="json", choices=list(specio.FORMATS))
    p.add_argument("--at", type=float, help="family parameter of the polyhedron to use")


def build_parser():
    ap = argparse.ArgumentParser(prog="flexilab", description="Flexible polyhedra toolkit")
    sub = ap.add_subparsers(dest="command", required=True)
    for name in ("construct", "sweep", "track", "rigidity", "volume"):
        p = sub.add_parser(name)
        _common(p)
        if name == "volume":
            p.add_argument("--method", choices=["cone-sum", "monte-carlo"])
            p.add_argument("--N", type=int, default=10 ** 5)
        if name == "track":
            p.add_argument("--step", type=float, default=0.02)
    ver = sub.add_parser("verify").add_subparsers(dest="what", required=True)
    b = ver.add_parser("bellows")
    _common(b)
    b.add_argument("--expect", choices=["constant", "non-constant"], default="constant")
    b.add_argument("--method", choices=["cone-sum", "schlafli", "monte-carlo"])
    b.add_argument("--N", type=int, default=200_000)
    q = ver.add_parser("biquad")
    _common(q)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    command = args.command if args.command != "verify" else f"verify {args.what}"
    options = {}
    for key in ("at", "method", "N", "step"):
        if getattr(args, key, None) is not None:
            options[key] = getattr(args, key)
    try:
        spec = RunSpec(command=command, inputs=(args.input,), space=args.space, u_from=args.u_from,
                       u_to=args.u_to, steps=args.steps, seed=args.seed, tol=args.tol, out=args.out,
                       fmt=args.fmt, expect=getattr(args, "expect", None), options=options)
    except FlexError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return run(spec)


if __name__ == "__main__":
    sys.exit(main())
