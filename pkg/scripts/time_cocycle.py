"""Cost of the cocycle check against truncation order, for both twist families.

    python scripts/time_cocycle.py --max-N 8
"""
import argparse
import time

from jordtwist.hopfcheck import check_cocycle
from jordtwist.twists import fgz_inv, fru_inv


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-N", type=int, default=7)
    ap.add_argument("--u", default="symbolic")
    args = ap.parse_args()

    print(f"{'N':>3} {'terms':>7} {'build GZ ms':>12} {'build R ms':>11} {'cocycle ms':>11} {'pass':>5}")
    for N in range(1, args.max_N + 1):
        t0 = time.perf_counter()
        f = fgz_inv(args.u, N)
        t1 = time.perf_counter()
        fru_inv(args.u, N)
        t2 = time.perf_counter()
        rep = check_cocycle(f, "fgz_inv", u=args.u)
        print(f"{N:>3} {len(f.terms):>7} {1e3 * (t1 - t0):>12.1f} {1e3 * (t2 - t1):>11.1f} {rep.ms:>11.1f} {str(rep.passed):>5}")


if __name__ == "__main__":
    main()
