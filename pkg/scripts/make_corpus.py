"""Build and cache the graph6 corpus of all graphs on up to --max-n vertices."""

from __future__ import annotations

import argparse
import time
from pathlib import Path

from listramsey.corpus import KNOWN_COUNTS, default_cache_dir, graphs_on


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-n", type=int, default=9)
    ap.add_argument("--cache-dir", type=Path, default=None)
    args = ap.parse_args()
    cache = args.cache_dir or default_cache_dir()
    for n in range(1, args.max_n + 1):
        t0 = time.perf_counter()
        gs = graphs_on(n, cache_dir=cache)
        status = "ok" if KNOWN_COUNTS.get(n) in (None, len(gs)) else "COUNT MISMATCH"
        print(f"n={n}: {len(gs)} graphs ({time.perf_counter() - t0:.1f}s) {status}")
    print(f"cache: {cache}")


if __name__ == "__main__":
    main()
