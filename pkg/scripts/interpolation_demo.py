"""Homogeneous interpolation with an increasing number of random nodes.

For each N the Blaschke product B is built, then tested against random
square-summable series G: BG must vanish at every node and keep the norm of G.
A repeated node is included at the end to show the breakdown report.

    python scripts/interpolation_demo.py --max-points 5 --seed 1
"""
import argparse

import numpy as np

from treehardy.errors import RecursionBreakdownError
from treehardy.hardy import h2_norm, point_eval, series_mul
from treehardy.sampling import random_k, random_series
from treehardy.schur import InterpolationProblem, interpolate


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-points", type=int, default=5)
    ap.add_argument("--samples", type=int, default=10)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()
    rng = np.random.default_rng(args.seed)

    print(f"{'N':>2} {'degree':>6} {'min |k_j|':>10} {'vanishing':>10} {'norm err':>10}")
    pts = []
    for N in range(1, args.max_points + 1):
        pts.append(random_k(rng))
        sol = interpolate(InterpolationProblem(tuple(pts)))
        B = sol.blaschke_product
        vanish = norm_err = 0.0
        for _ in range(args.samples):
            G = random_series(rng, int(rng.integers(0, 4)))
            BG = series_mul(B, G)
            vanish = max(vanish, max(point_eval(BG, c).norm_inf() for c in pts))
            norm_err = max(norm_err, abs(h2_norm(BG) - h2_norm(G)))
        kmin = min(k.inf_abs() for k in sol.ks)
        print(f"{N:2d} {B.degree:6d} {kmin:10.3e} {vanish:10.2e} {norm_err:10.2e}")

    try:
        interpolate(InterpolationProblem((pts[0], pts[0])))
        print("repeated node: no breakdown (unexpected)")
    except RecursionBreakdownError as exc:
        print(f"repeated node: breakdown at j={exc.index}: {exc}")


if __name__ == "__main__":
    main()
