#!/usr/bin/env python3
"""Growth-rate study: witness lower bounds against n/(1-r).

Sweeps the single-point classes sigma_{r,n} for the Hardy(2) and weighted
l^2(alpha) scales, prints the per-cell table and the fitted log-log
slopes (expected: 1/2 for Hardy(2), (2 alpha - 1)/2 for the weighted
scale).
"""

import argparse

from discinterp import bound_sweep, hardy, seq_weighted


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=1.5)
    ap.add_argument("--n-grid", default="4,8,16,32,64")
    ap.add_argument("--r", type=float, default=0.5)
    ap.add_argument("--estimate-cap", type=int, default=0,
                    help="also run the constant estimator for n up to this cap")
    ap.add_argument("--budget", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    n_grid = [int(tok) for tok in args.n_grid.split(",")]
    for space, expected in (
        (hardy(2), 0.5),
        (seq_weighted(2, args.alpha), (2 * args.alpha - 1) / 2),
    ):
        res = bound_sweep(
            space, n_grid, [args.r],
            budget=args.budget, estimate_cap=args.estimate_cap, seed=args.seed,
        )
        print(f"\n{space.label()}  (expected slope {expected:.3f})")
        print(f"{'n':>4} {'x=n/(1-r)':>10} {'witness':>10} {'estimate':>10} {'lower':>10}")
        for row in res.rows:
            est = f"{row.estimate:.4f}" if row.estimate is not None else "-"
            print(f"{row.n:>4} {row.x:>10.2f} {row.witness:>10.4f} {est:>10} {row.lower:>10.4f}")
        print(f"fitted witness slope: {res.slope_witness:.4f}")
        if res.slope_estimate is not None:
            print(f"fitted estimate slope: {res.slope_estimate:.4f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
