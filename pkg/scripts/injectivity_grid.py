"""Exhaustive moment probe over all small diagrams on an integer grid.

Reports how many distinct pairs are separated and a histogram of the total
order of the first separating moment.
"""

import argparse
import itertools
from collections import Counter

from gpcurves.diagrams import PersistenceDiagram
from gpcurves.injectivity import Verdict, injectivity_probe


def main(argv=None):
    ap = argparse.ArgumentParser(description="exhaustive grid injectivity probe")
    ap.add_argument("--grid", type=int, default=3, help="coordinates range over 0..GRID")
    ap.add_argument("--max-points", type=int, default=3)
    ap.add_argument("--max-order", type=int, default=12)
    args = ap.parse_args(argv)
    cells = [(b, d) for b in range(args.grid + 1) for d in range(args.grid + 1) if d > b]
    diags = [PersistenceDiagram(c) for k in range(args.max_points + 1)
             for c in itertools.combinations_with_replacement(cells, k)]
    orders, missed = Counter(), []
    for C, D in itertools.combinations(diags, 2):
        r = injectivity_probe(C, D, 1.0, args.max_order)
        if r.verdict is Verdict.DISTINGUISHED:
            orders[sum(r.order)] += 1
        else:
            missed.append((C, D))
    print(f"diagrams={len(diags)} pairs={len(diags) * (len(diags) - 1) // 2} undistinguished={len(missed)}")
    for k in sorted(orders):
        print(f"total_order={k} pairs={orders[k]}")
    for C, D in missed[:10]:
        print("missed:", C.as_array().tolist(), D.as_array().tolist())


if __name__ == "__main__":
    main()
