"""Tabulate q_single and q_pair against their closed forms.

    python scripts/ritt_grid.py --max-i 3 --max-p 3 --max-sum 4
    python scripts/ritt_grid.py --fast --csv > grid.csv

Each row also carries the size of the largest slice that was decided.
"""

import argparse
import csv
import sys
import time

from rittva.nilpotency import q_pair, q_single
from rittva.slices import ResourceExceeded


def largest(ans):
    return max(r["basis_size"] for r in ans.witness_grades)


def rows(args):
    for i in range(args.max_i + 1):
        for p in range(1, args.max_p + 1):
            yield "single", lambda i=i, p=p: q_single(i, p, fast=args.fast, ceiling=args.ceiling), {"i": i, "p": p}
    cache: dict = {}
    for s in range(args.max_sum + 1):
        for i in range(s + 1):
            yield "pair", lambda i=i, j=s - i: q_pair(i, j, fast=args.fast, ceiling=args.ceiling, cache=cache), \
                {"i": i, "j": s - i}
        cache.clear()


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--max-i", type=int, default=3)
    ap.add_argument("--max-p", type=int, default=3)
    ap.add_argument("--max-sum", type=int, default=4)
    ap.add_argument("--fast", action="store_true")
    ap.add_argument("--ceiling", type=int)
    ap.add_argument("--csv", action="store_true")
    args = ap.parse_args()

    fields = ["kind", "i", "p", "j", "found", "predicted", "agree", "largest_slice", "seconds"]
    writer = csv.DictWriter(sys.stdout, fields) if args.csv else None
    if writer:
        writer.writeheader()
    for kind, job, label in rows(args):
        t0 = time.perf_counter()
        row = {"kind": kind, **label}
        try:
            ans = job()
            row.update(found=ans.found_index, predicted=ans.predicted_index, agree=ans.agree,
                       largest_slice=largest(ans))
        except ResourceExceeded as exc:
            row.update(found="", predicted="", agree="", largest_slice=f"over ceiling ({exc.size})")
        row["seconds"] = f"{time.perf_counter() - t0:.2f}"
        if writer:
            writer.writerow(row)
        else:
            print("  ".join(f"{k}={row.get(k, '')}" for k in fields if k in row), flush=True)


if __name__ == "__main__":
    main()
