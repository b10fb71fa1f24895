"""Volume along every bundled Euclidean family, plus a CSV per family.

    python3 scripts/bellows_sweep.py --out-dir runs/bellows
"""
import argparse
from pathlib import Path

import numpy as np

from flexilab import specio
from flexilab.volumetrics import bellows_report

FAMILIES = ["rational3", "rational4", "rational5", "elliptic3", "elliptic4", "bricard2"]


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out-dir", type=Path)
    ap.add_argument("--steps", type=int, default=81)
    args = ap.parse_args()
    if args.out_dir:
        args.out_dir.mkdir(parents=True, exist_ok=True)
    print(f"{'family':<12} {'V0':>14} {'max |V - V0|':>14} {'max edge dev':>13}  verdict")
    for name in FAMILIES:
        fam = specio.family_from_spec(specio.load_spec("@" + name))
        sweep = None if fam.evaluator is None else np.linspace(*fam.interval, args.steps)
        rep = bellows_report(fam, sweep)
        print(f"{name:<12} {rep.volumes[0]:14.10f} {rep.max_deviation:14.3e} "
              f"{max(rep.edge_dev):13.3e}  {rep.verdict}")
        if args.out_dir:
            (args.out_dir / f"{name}.csv").write_text(rep.to_csv())


if __name__ == "__main__":
    main()
