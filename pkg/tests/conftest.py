"""Independent reference implementations used as test oracles.

Nothing here calls the search engine or the copy enumerator of the
package: densities are recomputed by plain subset loops, copies come from
networkx's matcher, and Ramsey questions are settled by enumerating every
colouring with numpy.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations, product

import networkx as nx
import numpy as np
import pytest
from hypothesis import strategies as st
from networkx.algorithms import isomorphism

from listramsey.graph import Graph


def to_nx(G: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(G.n))
    h.add_edges_from(G.edges)
    return h


def naive_max_density(G: Graph) -> Fraction:
    best = Fraction(0)
    for k in range(1, G.n + 1):
        for S in combinations(range(G.n), k):
            s = set(S)
            e = sum(1 for u, v in G.edges if u in s and v in s)
            best = max(best, Fraction(e, k))
    return best


def naive_m2(G: Graph) -> Fraction:
    best = Fraction(1, 2)
    for k in range(3, G.n + 1):
        for S in combinations(range(G.n), k):
            s = set(S)
            e = sum(1 for u, v in G.edges if u in s and v in s)
            best = max(best, Fraction(e - 1, k - 2))
    return best


def nx_copies(F: Graph, G: Graph) -> set[frozenset]:
    """Edge sets of subgraphs of G isomorphic to F; isolated vertices of F
    only need room (an embedding is injective on all of V(F))."""
    if F.n > G.n:
        return set()
    Fn = to_nx(F)
    Fn.remove_nodes_from([u for u in range(F.n) if Fn.degree(u) == 0])
    gm = isomorphism.GraphMatcher(to_nx(G), Fn)
    out = set()
    for m in gm.subgraph_monomorphisms_iter():
        inv = {b: a for a, b in m.items()}
        out.add(frozenset(tuple(sorted((inv[u], inv[v]))) for u, v in Fn.edges()))
    return out


def copy_masks(F: Graph, G: Graph) -> np.ndarray:
    idx = {e: i for i, e in enumerate(G.edges)}
    return np.array([sum(1 << idx[e] for e in c) for c in nx_copies(F, G)], dtype=np.int64)


def all_colourings_avoiding(G: Graph, members, r: int = 2) -> int:
    """Number of r-colourings (r = 2) with no monochromatic member copy,
    by enumerating all 2^e colour-0 masks."""
    assert r == 2
    m = G.e
    masks = np.concatenate([copy_masks(F, G) for F in members]) if members else np.zeros(0, np.int64)
    col0 = np.arange(1 << m, dtype=np.int64)
    full = (1 << m) - 1
    col1 = full ^ col0
    bad = np.zeros(1 << m, dtype=bool)
    for cm in masks:
        bad |= (col0 & cm) == cm
        bad |= (col1 & cm) == cm
    return int((~bad).sum())


def brute_colourable_from_lists(G: Graph, members, lists) -> bool:
    copies = [c for F in members for c in nx_copies(F, G)]
    for choice in product(*lists):
        col = dict(zip(G.edges, choice))
        if not any(len({col[e] for e in c}) == 1 for c in copies):
            return True
    return False


@st.composite
def graphs(draw, min_n=0, max_n=7, min_e=0):
    if min_e > 0:
        min_n = max(min_n, 2)
    n = draw(st.integers(min_n, max_n))
    pairs = list(combinations(range(n), 2))
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, min_size=min(min_e, len(pairs))) if pairs
                  else st.just([]))
    return Graph(n, tuple(chosen))


@pytest.fixture(scope="session")
def rng_seed():
    return 20240611


def brute_two_colourable(num_vertices: int, edges) -> bool:
    """Proper 2-colourability by trying every 0/1 vector."""
    masks = [sum(1 << v for v in e) for e in edges]
    full = (1 << num_vertices) - 1
    for x in range(1 << num_vertices):
        y = full ^ x
        if all((x & m) != m and (y & m) != m for m in masks):
            return True
    return False


def brute_list_colourable_hypergraph(lists, edges) -> bool:
    """Whether vertices can take colours from their lists with no
    monochromatic hyperedge; exhaustive product."""
    for choice in product(*lists):
        if all(len({choice[v] for v in e}) > 1 for e in edges):
            return True
    return False


@st.composite
def hypergraphs(draw, max_v=7, max_e=6, max_size=4):
    nv = draw(st.integers(1, max_v))
    edges = draw(st.lists(st.frozensets(st.integers(0, nv - 1), min_size=1, max_size=min(max_size, nv)),
                          max_size=max_e, unique=True))
    return nv, edges


@st.composite
def unicyclic_or_tree(draw, max_n=9, cycle=None):
    """Connected graph with at most one cycle: a random tree plus maybe one chord."""
    n = draw(st.integers(2, max_n))
    edges = {tuple(sorted((v, draw(st.integers(0, v - 1))))) for v in range(1, n)}
    want = draw(st.booleans()) if cycle is None else cycle
    if want:
        free = [p for p in combinations(range(n), 2) if p not in edges]
        if free:
            edges.add(draw(st.sampled_from(free)))
    return Graph(n, tuple(sorted(edges)))


@st.composite
def two_lists(draw, G, palette=4, identical=None):
    same = draw(st.booleans()) if identical is None else identical
    if same:
        return [(0, 1)] * G.e
    return [tuple(sorted(draw(st.sets(st.integers(0, palette - 1), min_size=2, max_size=2)))) for _ in G.edges]
