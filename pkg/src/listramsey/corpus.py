"""All graphs on a few vertices, up to isomorphism.

Graphs on n vertices are produced by adding a vertex with every possible
neighbourhood to each graph on n - 1 vertices and keeping one graph per
nauty certificate.  Levels are cached as graph6 files, since n = 9 takes a
couple of minutes.
"""

from __future__ import annotations

import os
from pathlib import Path
from typing import Iterator

import networkx as nx
import pynauty

from .graph import Graph

# number of unlabelled graphs on n vertices (OEIS A000088), used as a sanity check
KNOWN_COUNTS = {0: 1, 1: 1, 2: 2, 3: 4, 4: 11, 5: 34, 6: 156, 7: 1044, 8: 12346, 9: 274668, 10: 12005168}


def default_cache_dir() -> Path:
    env = os.environ.get("LISTRAMSEY_CORPUS")
    if env:
        return Path(env)
    return Path(__file__).resolve().parent / "corpus_data"


def certificate(n: int, adj_masks) -> bytes:
    g = pynauty.Graph(n, adjacency_dict={u: [w for w in range(n) if adj_masks[u] >> w & 1] for u in range(n)})
    return pynauty.certificate(g)


def _extend(level: list[tuple[int, ...]], n: int) -> list[tuple[int, ...]]:
    """Graphs on n vertices from those on n - 1, as adjacency-mask tuples."""
    seen: dict[bytes, tuple[int, ...]] = {}
    new = n - 1
    for masks in level:
        for nb in range(1 << new):
            ext = [m | ((nb >> u & 1) << new) for u, m in enumerate(masks)]
            ext.append(nb)
            cert = certificate(n, ext)
            if cert not in seen:
                seen[cert] = tuple(ext)
    return list(seen.values())


def _to_graph(masks: tuple[int, ...]) -> Graph:
    n = len(masks)
    return Graph(n, tuple((u, w) for u in range(n) for w in range(u + 1, n) if masks[u] >> w & 1))


def _masks(g: Graph) -> tuple[int, ...]:
    return g.adj_mask


def _write_level(path: Path, graphs: list[Graph]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_suffix(".tmp")
    with open(tmp, "wb") as fh:
        for g in graphs:
            h = nx.Graph()
            h.add_nodes_from(range(g.n))
            h.add_edges_from(g.edges)
            fh.write(nx.to_graph6_bytes(h, header=False))
    tmp.replace(path)


def _read_level(path: Path) -> list[Graph]:
    out = []
    with open(path, "rb") as fh:
        for line in fh:
            line = line.strip()
            if line:
                h = nx.from_graph6_bytes(line)
                out.append(Graph(h.number_of_nodes(), tuple(h.edges())))
    return out


def graphs_on(n: int, cache_dir: Path | None = None) -> list[Graph]:
    """Every graph on exactly ``n`` vertices, one per isomorphism class."""
    if n == 0:
        return [Graph(0)]
    cache = default_cache_dir() if cache_dir is None else Path(cache_dir)
    path = cache / f"graphs{n}.g6"
    if path.exists():
        return _read_level(path)
    if n <= 2:
        level = [Graph(n)] + ([Graph(2, ((0, 1),))] if n == 2 else [])
    else:
        prev = [_masks(g) for g in graphs_on(n - 1, cache)]
        level = [_to_graph(m) for m in _extend(prev, n)]
    level.sort(key=lambda g: (g.e, g.edges))
    if n in KNOWN_COUNTS and len(level) != KNOWN_COUNTS[n]:
        raise RuntimeError(f"generated {len(level)} graphs on {n} vertices, expected {KNOWN_COUNTS[n]}")
    if n >= 6:
        _write_level(path, level)
    return level


def all_graphs(max_n: int, min_n: int = 1, cache_dir: Path | None = None) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from graphs_on(n, cache_dir)


def connected_graphs(max_n: int, min_n: int = 1, cache_dir: Path | None = None) -> Iterator[Graph]:
    for g in all_graphs(max_n, min_n, cache_dir):
        if g.is_connected():
            yield g
