"""Build fooling functions and check the lower bound they certify.

Bumps are placed on the bands where |cos(2 pi k x)| >= 1/sqrt(2), split at
the sample points.  The sum vanishes with its first s-1 derivatives at every
sample point, so any rule using those points returns the same value for it
as for zero.  Its oscillatory integral is therefore a lower bound for the
worst-case error of every such rule.

    python demos/lower_bound_certificate.py --k 3 --s 2 --n 6
"""

import argparse
import json

import numpy as np

from oscquad import fooling_function, lower_bound_constant, qmc_worst_case_error


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=3)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--n", type=int, default=6)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    c_tilde, c = lower_bound_constant(args.s)
    print(f"s = {args.s}: c_tilde = {c_tilde:.6g}, c = {c:.6g}\n")
    rng = np.random.default_rng(args.seed)
    samples = {
        "equispaced": np.arange(1, args.n + 1) / args.n,
        "random": np.sort(rng.random(args.n)),
    }
    for name, pts in samples.items():
        cert = fooling_function(args.k, args.s, pts)
        print(f"{name} nodes: {np.round(pts, 4).tolist()}")
        info = cert.to_dict()
        info.pop("function")
        print(json.dumps(info, indent=2))
    qmc = qmc_worst_case_error(args.n, args.k, args.s).value
    print(f"\nfor comparison, exact QMC worst-case error with these n: {qmc:.4e}")


if __name__ == "__main__":
    main()
