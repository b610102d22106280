"""Grow random clusters, explore them, and report the balance functional
and the trace round trip."""

from __future__ import annotations

import argparse
import random
from collections import Counter

from listramsey.density import family_two_density
from listramsey.explorer import decode_trace, encode_trace, eta_constant, explore_cluster, grow_random_cluster, verify_balance
from listramsey.fileio import read_family


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--family", default="K4")
    ap.add_argument("--clusters", type=int, default=200)
    ap.add_argument("--max-steps", type=int, default=8)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--show", type=int, default=1, help="print this many traces")
    args = ap.parse_args()

    fam = read_family(args.family)
    t = family_two_density(fam)
    eta1, eta2, eta = eta_constant(fam)
    print(f"t = {t}, eta1 = {eta1}, eta2 = {eta2}, eta = {eta}")
    rng = random.Random(args.seed)
    tally = Counter()
    for k in range(args.clusters):
        C = grow_random_cluster(fam, rng.randint(1, args.max_steps), rng)
        tr = explore_cluster(C, fam, 10 ** 9, 10 ** 9)
        tokens = encode_trace(tr)
        tally["balance"] += verify_balance(tr, t, eta)
        tally["round_trip"] += decode_trace(tokens, fam, C.n) == C
        tally["degenerate"] += tr.degenerate_count
        tally["steps"] += tr.tau
        if k < args.show:
            print(f"cluster {k}: v={len(C.support())} e={C.e}")
            print("\n".join("  " + ln for ln in tokens))
    n = args.clusters
    print(f"balance held {tally['balance']}/{n}, round trip exact {tally['round_trip']}/{n}, "
          f"{tally['steps']} steps of which {tally['degenerate']} degenerate")


if __name__ == "__main__":
    main()
