"""Exact worst-case errors of the QMC rule for one wave number.

For n <= |k| the equispaced rule cannot tell e_k from lower frequencies and
is worse than returning zero.  Damping by the optimal factor repairs this, and
the modified rule (zero until n >= 2|k|) follows the n^-s decay afterwards.

    python demos/qmc_error_curves.py --k 5 --s 2 --n-max 30
"""

import argparse

from oscquad import (initial_error, minimal_error_bounds, modified_qmc_error, optimal_damping,
                     qmc_worst_case_error)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", type=int, default=5)
    ap.add_argument("--s", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=30)
    args = ap.parse_args()

    k, s = args.k, args.s
    e0 = initial_error(k, s, True).value
    print(f"periodic space, k={k}, s={s}: initial error e0 = {e0:.4e}\n")
    print(f"{'n':>4} {'qmc':>11} {'damped a*':>11} {'a*':>8} {'modified':>11} "
          f"{'lower':>11} {'upper':>11}")
    for n in range(1, args.n_max + 1):
        eq = qmc_worst_case_error(n, k, s).value
        a, damped = optimal_damping(n, k, s)
        star = modified_qmc_error(n, k, s).value
        lo, up = minimal_error_bounds(n, k, s, True)
        flag = "  qmc worse than zero" if eq > e0 else ""
        print(f"{n:>4} {eq:11.4e} {damped.value:11.4e} {a:8.4f} {star:11.4e} "
              f"{lo.value:11.4e} {up.value:11.4e}{flag}")


if __name__ == "__main__":
    main()
