"""How many function values are needed for a target error.

Prints the lower and upper complexity formulas next to the budget actually
achieved by the implemented rules, for both error criteria and both spaces.
The normalized non-periodic column stays bounded as |k| grows, while the
normalized periodic one grows linearly in |k|.

    python demos/complexity_tables.py --eps 0.01 --s 2
"""

import argparse

from oscquad import complexity, complexity_infty


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eps", type=float, default=0.01)
    ap.add_argument("--s", type=int, default=2)
    args = ap.parse_args()

    ks = [0, 1, 10, 100, 1000, 10 ** 4, 10 ** 5]
    for periodic in (True, False):
        for crit in ("abs", "nor"):
            label = f"{'periodic' if periodic else 'non-periodic'}, {crit}"
            print(f"{label}  (eps={args.eps}, s={args.s})")
            print(f"{'k':>8} {'lower':>8} {'achieved':>9} {'upper':>9}")
            for k in ks:
                c = complexity(args.eps, k, args.s, crit, periodic)
                tag = "  zero algorithm suffices" if c.zero_case else ""
                print(f"{k:>8} {c.lower:>8} {c.achieved:>9} {c.upper:>9}{tag}")
            print()
    print("s = inf (no lower bound is known)")
    print(f"{'eps':>8} {'k':>6} {'achieved':>9} {'upper':>6}")
    for eps in (1e-3, 1e-6, 1e-9):
        for k in (0, 100):
            c = complexity_infty(eps, k)
            print(f"{eps:>8.0e} {k:>6} {c.achieved:>9} {c.upper:>6}")


if __name__ == "__main__":
    main()
