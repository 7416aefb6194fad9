#!/usr/bin/env python3
"""Tabulate the coplanar size ratios that are central for a grid of mass ratios.

    python3 scripts/root_count_table.py --n 2 3 4 --b 0.5 1 2 [--staggered] [--csv out.csv]
"""

import argparse
import csv
import math
import sys

from twisted_cc import TwistedPairParams, build_configuration, central_residual, scan_planar_a


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument("--n", type=int, nargs="+", default=[2, 3, 4, 5, 6])
    p.add_argument("--b", type=float, nargs="+", default=[0.25, 0.5, 1.0, 2.0, 4.0])
    p.add_argument("--staggered", action="store_true", help="twist pi/N instead of 0")
    p.add_argument("--csv", default=None)
    args = p.parse_args(argv)

    rows = []
    for n in args.n:
        theta = math.pi / n if args.staggered else 0.0
        for b in args.b:
            roots = [r.value for r in scan_planar_a(n, b, theta)]
            res = [central_residual(build_configuration(TwistedPairParams(n, a, b, 0.0, theta))).max_relative
                   for a in roots]
            rows.append((n, b, len(roots), roots, max(res, default=math.nan)))

    print(f"{'N':>3} {'b':>6} {'count':>5}  {'roots':<40} oracle")
    for n, b, k, roots, worst in rows:
        print(f"{n:>3} {b:>6g} {k:>5}  {', '.join(f'{a:.10f}' for a in roots):<40} {worst:.1e}")
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["n_gon", "mass_ratio", "count", "roots"])
            for n, b, k, roots, _ in rows:
                w.writerow([n, b, k, ";".join(repr(a) for a in roots)])
    return 0 if all(k == 2 for _, _, k, _, _ in rows) else 1


if __name__ == "__main__":
    sys.exit(main())
