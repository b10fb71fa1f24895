"""Regenerate the bundled family fixtures in src/flexilab/data."""
import json
from pathlib import Path

import numpy as np

from flexilab.families import find_elliptic_spec
from flexilab.shapes import cube, regular_octahedron
from flexilab.specio import mesh_to_dict

DATA = Path(__file__).resolve().parents[1] / "src" / "flexilab" / "data"


def dump(name, obj):
    (DATA / name).write_text(json.dumps(obj, indent=2) + "\n")
    print("wrote", name)


def main():
    DATA.mkdir(exist_ok=True)
    tri = [[1.0, 0.0, 0.0], [-0.5, np.sqrt(3) / 2, 0.0], [-0.5, -np.sqrt(3) / 2, 0.0]]
    dump("rational3.json", {"kind": "rational", "n": 3, "lambda": [1.0, 2.0, 3.0],
                            "frame": {"vertices": tri}})
    for n in (4, 5, 6):
        rng = np.random.default_rng(100 + n)
        V = rng.normal(size=(n, n))
        lam = (0.5 + 0.6 * np.arange(n)).tolist()
        dump(f"rational{n}.json", {"kind": "rational", "n": n, "lambda": lam,
                                   "frame": {"vertices": V.tolist()}})
    for n, seed in ((3, 0), (4, 0)):
        spec = find_elliptic_spec(n, rng=seed)
        dump(f"elliptic{n}.json", spec.to_dict())
    dump("bipyramid.json", {"kind": "bipyramid", "side": 0.6, "margin": 0.1})
    dump("bricard2.json", {"kind": "symmetric", "space": "euclid", "symmetry": "plane",
                           "seed": 0, "steps": 120, "max_step": 0.05})
    dump("hyperbolic_octahedron.json", {"kind": "symmetric", "space": "hyperbolic", "symmetry": "line",
                                        "seed": 0, "steps": 200, "max_step": 0.05})
    dump("regular_octahedron.json", mesh_to_dict(regular_octahedron()))
    dump("cube.json", mesh_to_dict(cube()))


if __name__ == "__main__":
    main()
