"""Truncation order and isometry defect of Blaschke factors vs. tail radius.

    python scripts/blaschke_sweep.py --trials 20 --seed 0
"""
import argparse

import numpy as np

from treehardy.hardy import HardySeries, blaschke, h2_inner, series_mul
from treehardy.kalgebra import KElement
from treehardy.sampling import random_k2, uniform_disk


def isometry_defect(B, rng, shifts=4):
    worst = 0.0
    for m in range(shifts):
        p, q = random_k2(rng), random_k2(rng)
        lhs = h2_inner(series_mul(B, HardySeries.gamma_bar(m, p)), series_mul(B, HardySeries.constant(q)))
        worst = max(worst, abs(lhs - (p.k2_inner(q) if m == 0 else 0)))
    return worst


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--tol", type=float, default=1e-12)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'radius':>7} {'degree':>12} {'max defect':>11} {'min L':>8}")
    for radius in (0.1, 0.3, 0.5, 0.7, 0.9, 0.95):
        degrees, defects, lmin = [], [], np.inf
        for _ in range(args.trials):
            n = int(rng.integers(0, 5))
            a = KElement(uniform_disk(rng, 0.9, n), complex(radius * np.exp(2j * np.pi * rng.uniform())))
            bl = blaschke(a, args.tol)
            degrees.append(bl.series.degree)
            defects.append(isometry_defect(bl.series, rng))
            lmin = min(lmin, bl.L.inf_abs())
        print(f"{radius:7.2f} {min(degrees):5d}-{max(degrees):<6d} {max(defects):11.2e} {lmin:8.4f}")


if __name__ == "__main__":
    main()
