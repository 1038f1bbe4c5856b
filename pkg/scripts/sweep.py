"""Bound and oracle sweep over the corpus plus seeded random graphs, with progress."""
import argparse
import json
import sys
import time

from circumference.harness import acceptance_graphs, sweep


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--nmax", type=int, default=14)
    ap.add_argument("--weightings", type=int, default=25)
    ap.add_argument("--seed", type=int, default=2024)
    ap.add_argument("--out", help="write the JSON report here")
    args = ap.parse_args()
    start = time.perf_counter()

    def progress(name, report):
        print(f"{time.perf_counter() - start:7.1f}s {name:24s} calls {report.calls} failures {len(report.failures)}", flush=True)

    graphs = acceptance_graphs(count=args.count, nmax=args.nmax, seed=args.seed)
    report = sweep(graphs, weightings=args.weightings, progress=progress)
    data = report.to_dict(timing=True)
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(data, fh, indent=1, sort_keys=True)
    print(f"{report.calls} calls, {report.oracle_checked} oracle checked, {len(report.failures)} failures")
    for f in report.failures[:20]:
        print("  ", f)
    return 1 if report.failures else 0


if __name__ == "__main__":
    sys.exit(main())
