"""Run the invariant suites over a grid of tree sizes and seeds.

    python scripts/verify_grid.py --seeds 0 1 2
"""
import argparse
import time

from treehardy.verify import RunConfig, report

GRID = [(2, 3), (2, 5), (2, 6), (3, 3), (3, 4), (4, 3)]


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seeds", type=int, nargs="+", default=[0, 1, 2])
    ap.add_argument("--degree", type=int, default=3)
    args = ap.parse_args()

    worst: dict[str, float] = {}
    failures = []
    for q, depth in GRID:
        for seed in args.seeds:
            t0 = time.perf_counter()
            rep = report(RunConfig(q=q, depth=depth, degree=args.degree, seed=seed))
            dt = time.perf_counter() - t0
            for r in rep["records"]:
                worst[r["name"]] = max(worst.get(r["name"], 0.0), r["max_residual"])
                if not r["passed"]:
                    failures.append((q, depth, seed, r["name"], r["max_residual"]))
            print(f"q={q} depth={depth} seed={seed}: {'pass' if rep['passed'] else 'FAIL'} ({dt:.1f}s)")
    print()
    for name in sorted(worst):
        print(f"{name:<28} {worst[name]:.2e}")
    for f in failures:
        print("failure:", *f)


if __name__ == "__main__":
    main()
