#!/usr/bin/env python3
"""Sample the tangential force over a (N, a, h) grid and report where it vanishes.

A configuration can only be central where the tangential force is zero; this
confirms numerically that happens only at twists 0 and pi/N.
"""

import argparse
import math
import sys
import time

import numpy as np

from twisted_cc import scan_theta


def main(argv=None):
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--a", type=float, nargs="+", default=[0.5, 1.0, 2.0])
    p.add_argument("--h", type=float, nargs="+", default=[0.0, 0.5, 1.0, 2.0])
    p.add_argument("--grid", type=int, default=1000)
    args = p.parse_args(argv)

    t0 = time.perf_counter()
    bad = 0
    worst = (math.inf, None)
    for n in range(2, args.max_n + 1):
        cell = 2 * math.pi / n / args.grid
        for a in args.a:
            for h in args.h:
                rep = scan_theta(n, a, h, args.grid)
                stray = [z for z in rep.zeros_found
                         if min(abs(z), abs(z - math.pi / n), abs(z - 2 * math.pi / n)) > cell]
                if stray or not rep.min_positive > 0:
                    bad += 1
                    print(f"N={n} a={a} h={h}: stray zeros {stray}, min {rep.min_positive:.3e}")
                if rep.min_positive < worst[0]:
                    worst = (rep.min_positive, (n, a, h))
    print(f"smallest sampled f on (0, pi/N): {worst[0]:.3e} at N, a, h = {worst[1]}")
    print(f"{bad} failing grids, {time.perf_counter() - t0:.2f}s")
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
