"""Estimate P[G(n,p) is 2-Ramsey for a family] over a grid of p.

The grid is c * n^(-1/m2) for a range of constants c, so that curves for
different n line up if the threshold exponent is right.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from listramsey.fileio import read_family
from listramsey.lab import SweepConfig, ramsey_sweep, rows_to_csv, threshold_exponent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="K3")
    ap.add_argument("--n", default="20,30,40", help="comma-separated vertex counts")
    ap.add_argument("--c", default="0.5,1,1.5,2,3,4", help="comma-separated constants")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    fam = read_family(args.family)
    expo = threshold_exponent(fam)
    print(f"# family {fam.label}: predicted threshold n^{expo}", file=sys.stderr)
    first = True
    for n in (int(x) for x in args.n.split(",")):
        cs = [Fraction(c) for c in args.c.split(",")]
        grid = [min(1.0, float(c) * n ** float(expo)) for c in cs]
        labels = [f"{float(c):g}*n^({expo})" for c in cs]
        cfg = SweepConfig(n, grid, args.trials, fam, args.seed, p_labels=labels, jobs=args.jobs)
        text = rows_to_csv(ramsey_sweep(cfg))
        sys.stdout.write(text if first else text.split("\n", 1)[1])
        first = False


if __name__ == "__main__":
    main()
