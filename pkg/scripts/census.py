"""Count quandles of each order, labeled and up to isomorphism, with timings.

    python3 scripts/census.py --max-order 6 --jobs 2
"""
import argparse
import json
import time

from quandlekit.finite_quandle import enumerate_quandles, inner_group, quandle_tables


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-order", type=int, default=6)
    ap.add_argument("--jobs", type=int, default=1)
    ap.add_argument("--out", help="write the table of counts as JSON")
    args = ap.parse_args()

    rows = []
    print(f"{'n':>2} {'labeled':>8} {'classes':>8} {'connected':>9} {'seconds':>8}")
    for n in range(1, args.max_order + 1):
        t0 = time.perf_counter()
        labeled = len(quandle_tables(n, args.jobs))
        classes = enumerate_quandles(n, up_to_iso=True, bound=max(n, 6), jobs=args.jobs)
        secs = time.perf_counter() - t0
        connected = sum(1 for q in classes if len(inner_group(q).orbits()) == 1)
        rows.append({"n": n, "labeled": labeled, "classes": len(classes), "connected": connected,
                     "seconds": round(secs, 3)})
        print(f"{n:>2} {labeled:>8} {len(classes):>8} {connected:>9} {secs:>8.2f}")
    if args.out:
        with open(args.out, "w") as fh:
            json.dump(rows, fh, indent=2)


if __name__ == "__main__":
    main()
