"""Bipyramid in S^3 over a flexing equilateral spherical quadrilateral.

Prints, for each diagonal length, the quadrilateral area, the volume
(pi/2) * area, a Monte Carlo winding estimate and the Schläfli integral.

    python3 scripts/spherical_counterexample.py --samples 7 --N 200000
"""
import argparse
import math

import numpy as np

from flexilab.volumetrics import bipyramid_family, monte_carlo_volume, schlafli_variation


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--side", type=float, default=0.6)
    ap.add_argument("--margin", type=float, default=0.1)
    ap.add_argument("--samples", type=int, default=7)
    ap.add_argument("--N", type=int, default=200_000)
    args = ap.parse_args()
    fam = bipyramid_family(args.side, args.margin)
    area = fam.meta["area"]
    lo, hi = fam.interval
    per = max(1, -(-160 // max(args.samples - 1, 1)))
    fine = np.linspace(lo, hi, per * (args.samples - 1) + 1)
    res = schlafli_variation(fam.space, fam.sample(fine))
    V0 = math.pi / 2 * area(lo)
    print(f"{'d':>7} {'area':>10} {'(pi/2)A':>10} {'MC':>10} {'se':>8} {'V0 + Schlafli':>14}")
    for i, d in enumerate(np.linspace(lo, hi, args.samples)):
        est, se = monte_carlo_volume(fam.space, fam.evaluate(d), N=args.N, seed=i)
        j = i * per
        print(f"{d:7.4f} {area(d):10.6f} {math.pi / 2 * area(d):10.6f} {est:10.6f} {se:8.1e} "
              f"{V0 + res.cumulative[j]:14.6f}")


if __name__ == "__main__":
    main()
