"""Bad-cluster and unicyclic-component rates in G(n,p).

Runs the cluster scan (clusters with e/v above m2 of the family) at
p = c * n^(-1/m2), and the check that every component has at most one
cycle at p = c / n.
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

from listramsey.density import family_two_density
from listramsey.fileio import read_family
from listramsey.lab import Mode, SweepConfig, cluster_experiment, rows_to_csv, unicyclic_experiment


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="K4")
    ap.add_argument("--n", type=int, default=200)
    ap.add_argument("--c", default="0.1,0.2,0.5,1")
    ap.add_argument("--unicyclic-n", type=int, default=500)
    ap.add_argument("--unicyclic-c", default="0.1,0.5,1,2,10")
    ap.add_argument("--trials", type=int, default=100)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    fam = read_family(args.family)
    m2 = family_two_density(fam)
    cs = args.c.split(",")
    grid = [min(1.0, float(c) * args.n ** (-1 / float(m2))) for c in cs]
    cfg = SweepConfig(args.n, grid, args.trials, fam, args.seed, Mode.CLUSTER_SCAN,
                      p_labels=[f"{c}*n^(-1/({m2}))" for c in cs])
    sys.stdout.write(rows_to_csv(cluster_experiment(cfg)))

    n = args.unicyclic_n
    cs = args.unicyclic_c.split(",")
    grid = [Fraction(c) / n for c in cs]
    cfg = SweepConfig(n, grid, args.trials, fam, args.seed, Mode.UNICYCLIC, p_labels=[f"{c}/n" for c in cs])
    sys.stdout.write(rows_to_csv(unicyclic_experiment(cfg)).split("\n", 1)[1])


if __name__ == "__main__":
    main()
