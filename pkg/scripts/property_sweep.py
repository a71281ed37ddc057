"""Run the guaranteed-property sweep and print per-dimension worst margins.

A margin is the distance to failure with tolerance included; >= 0 passes.

Usage:
    python scripts/property_sweep.py --n-min 2 --n-max 8 --count 1000 --seed 42
"""

import argparse
import time

from corrdet.sweep import CHECKS, run_sweep


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n-min", type=int, default=2)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--count", type=int, default=1000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--tol", type=float, default=1e-9)
    args = ap.parse_args()

    print(f"{'n':>3} {'secs':>6} {'fail':>5}  " + "  ".join(f"{c[:12]:>12}" for c in CHECKS))
    total = 0
    for n in range(args.n_min, args.n_max + 1):
        t0 = time.perf_counter()
        s = run_sweep([n], args.count, args.seed, args.tol)
        total += s.total_failures
        worst = "  ".join(f"{s.worst[c]:>12.2e}" for c in CHECKS)
        print(f"{n:>3} {time.perf_counter() - t0:>6.1f} {s.total_failures:>5}  {worst}")
    print(f"total failures: {total}")
    return 1 if total else 0


if __name__ == "__main__":
    raise SystemExit(main())
