"""How the plane-wave star product and the realization of x_0 move with the gauge u.

    python scripts/gauge_sweep.py --k 1,2 --q -1/2,3 --kappa 2
"""
import argparse

from jordtwist.exactmath import parse_rational
from jordtwist.starprod import PlaneWave, SingularMomentum, star_planewave
from jordtwist.weylreal import SpaceConfig, xhat

GAUGES = ("-1", "0", "1/4", "1/3", "1/2", "2/3", "1", "2")


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--k", default="1,2")
    ap.add_argument("--q", default="-1/2,3")
    ap.add_argument("--v", default="1,0")
    ap.add_argument("--kappa", default="2")
    args = ap.parse_args()
    space = SpaceConfig.make(args.v.split(","))
    k = PlaneWave(tuple(parse_rational(c) for c in args.k.split(",")))
    q = PlaneWave(tuple(parse_rational(c) for c in args.q.split(",")))

    print(f"k = {list(map(str, k.k))}, q = {list(map(str, q.k))}, v = {args.v}, kappa = {args.kappa}")
    print(f"{'u':>5}  {'momentum':<28} {'prefactor':>10}")
    for u in GAUGES:
        try:
            out = star_planewave(u, args.kappa, space, k, q)
        except SingularMomentum:
            print(f"{u:>5}  singular")
            continue
        print(f"{u:>5}  {str(list(map(str, out.k))):<28} {str(out.prefactor):>10}")

    print("\nrealization of x_0 (t = 1/kappa kept symbolic):")
    for u in ("0", "1/2", "1"):
        print(f"  u = {u}: {xhat(0, space, u)}")


if __name__ == "__main__":
    main()
