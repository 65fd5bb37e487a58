"""Run every suite (clean and corrupted) and write JSON-lines reports.

    python scripts/run_all.py --N 4 --out reports/
"""
import argparse
import json
from pathlib import Path

from jordtwist.suites import SUITES, RunConfig, run_suite


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--N", type=int, default=4)
    ap.add_argument("--u", default="symbolic")
    ap.add_argument("--K", type=int, default=6)
    ap.add_argument("--out", type=Path, default=Path("reports"))
    args = ap.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)

    summary = []
    for corrupt in (False, True):
        cfg = RunConfig(N=args.N, u=args.u, K=args.K, corrupt=corrupt)
        tag = "corrupted" if corrupt else "clean"
        with open(args.out / f"{tag}.jsonl", "w") as fh:
            for name in sorted(SUITES):
                reports = run_suite(name, cfg)
                for r in reports:
                    fh.write(r.dumps() + "\n")
                ms = sum(r.ms for r in reports)
                summary.append((tag, name, sum(r.passed for r in reports), len(reports), ms))

    print(f"{'fixture':<10} {'suite':<12} {'passed':>8} {'ms':>9}")
    for tag, name, ok, total, ms in summary:
        print(f"{tag:<10} {name:<12} {ok:>4}/{total:<3} {ms:>9.1f}")
    clean_ok = all(ok == total for tag, _, ok, total, _ in summary if tag == "clean")
    corrupt_caught = all(ok < total for tag, _, ok, total, _ in summary if tag == "corrupted")
    print(json.dumps({"clean_all_pass": clean_ok, "every_corruption_caught": corrupt_caught}))


if __name__ == "__main__":
    main()
