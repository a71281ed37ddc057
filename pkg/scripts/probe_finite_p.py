"""Search for violations of det R <= f(n, r_p) across exponents and dimensions.

Usage:
    python scripts/probe_finite_p.py --ns 3 4 5 --ps 2.05 2.1 2.5 3 5 inf --budget 3000

Prints the best violation margin det R - f(n, r_p) found per (n, p); positive
margins are counterexamples, re-checked through both LU and an eigenvalue product.
"""

import argparse
import math
import time

import numpy as np

from corrdet.cli import parse_p
from corrdet.corrmodel import f_bound, r_p
from corrdet.explore import SearchConfig, search_p_counterexample
from corrdet.linalg import determinant, eigenvalues_symmetric


def recheck(R, p):
    bound = f_bound(R.n, r_p(R, p))
    return min(determinant(R.base), float(np.prod(eigenvalues_symmetric(R.base).values))) - bound


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--ns", type=int, nargs="+", default=[3, 4, 5])
    ap.add_argument("--ps", type=parse_p, nargs="+", default=[2.05, 2.1, 2.25, 2.5, 3.0, 5.0, math.inf])
    ap.add_argument("--budget", type=int, default=3000)
    ap.add_argument("--restarts", type=int, default=10)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    print(f"{'n':>3} {'p':>6} {'found':>6} {'margin':>12} {'recheck':>12} {'r_p':>8} {'secs':>6}")
    for n in args.ns:
        for p in args.ps:
            cfg = SearchConfig(n=n, p=p, budget=args.budget, restarts=args.restarts, seed=args.seed)
            t0 = time.perf_counter()
            res = search_p_counterexample(cfg)
            dt = time.perf_counter() - t0
            R = res.best_matrix
            print(f"{n:>3} {p:>6g} {str(res.found):>6} {res.objective:>12.3e} {recheck(R, p):>12.3e} "
                  f"{r_p(R, p):>8.4f} {dt:>6.1f}")
            if res.found and n == 3:
                print("      " + np.array2string(R.entries, precision=4, separator=", ").replace("\n", "\n      "))


if __name__ == "__main__":
    main()
