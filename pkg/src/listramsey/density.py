"""Exact graph densities and the small structural lemmas built on them.

Everything here works in :class:`fractions.Fraction`; no float ever enters a
density comparison.  Subset-based quantities enumerate all vertex subsets
(vectorised over bitmasks), so they are capped at ``MAX_SUBSET_VERTICES``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from fractions import Fraction
from itertools import combinations
from typing import Iterable

import numpy as np

from .errors import DomainError, FalsificationError, OrderingError, ResourceError
from .graph import Graph, GraphFamily

MAX_SUBSET_VERTICES = 20
HALF = Fraction(1, 2)


# -- subset tables ------------------------------------------------------------


@lru_cache(maxsize=32)
def _subset_tables(G: Graph) -> tuple[np.ndarray, np.ndarray]:
    """``(ecount, size)`` indexed by vertex bitmask: edges induced and |S|."""
    n = G.n
    if n > MAX_SUBSET_VERTICES:
        raise ResourceError(
            f"subset enumeration is capped at {MAX_SUBSET_VERTICES} vertices (got {n})",
            cap="MAX_SUBSET_VERTICES",
            value=n,
        )
    ecount = np.zeros(1 << n, dtype=np.int32)
    size = np.zeros(1 << n, dtype=np.int32)
    for i in range(n):
        lo = np.arange(1 << i, dtype=np.int64)
        back = G.adj_mask[i] & ((1 << i) - 1)
        ecount[(1 << i):(1 << (i + 1))] = ecount[: 1 << i] + np.bitwise_count(lo & back)
        size[(1 << i):(1 << (i + 1))] = size[: 1 << i] + 1
    return ecount, size


def _max_edges_by_size(G: Graph) -> list[int]:
    """``best[k]`` = max edges induced on k vertices (k = 0..n)."""
    ecount, size = _subset_tables(G)
    best = [0] * (G.n + 1)
    for k in range(1, G.n + 1):
        best[k] = int(ecount[size == k].max())
    return best


def _masks_with(G: Graph, k: int, edges: int) -> list[int]:
    ecount, size = _subset_tables(G)
    return [int(m) for m in np.nonzero((size == k) & (ecount == edges))[0]]


def _bits(mask: int) -> list[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


# -- densities ----------------------------------------------------------------


def max_density(G: Graph) -> Fraction:
    """m(G): the maximum of e(H)/v(H) over non-empty subgraphs H."""
    if G.e == 0:
        return Fraction(0)
    if G.n <= MAX_SUBSET_VERTICES:
        best = _max_edges_by_size(G)
        return max(Fraction(best[k], k) for k in range(1, G.n + 1))
    return _max_density_flow(G)


def _max_density_flow(G: Graph) -> Fraction:
    # Dinkelbach iteration; each step maximises b*e(S) - a*|S| by a min cut.
    import networkx as nx

    lam = Fraction(G.e, len(G.support()))
    while True:
        a, b = lam.numerator, lam.denominator
        net = nx.DiGraph()
        for i, (u, v) in enumerate(G.edges):
            net.add_edge("s", ("e", i), capacity=b)
            net.add_edge(("e", i), ("v", u))
            net.add_edge(("e", i), ("v", v))
        for u in G.support():
            net.add_edge(("v", u), "t", capacity=a)
        cut, (side, _) = nx.minimum_cut(net, "s", "t")
        if b * G.e - cut <= 0:
            return lam
        S = {x[1] for x in side if isinstance(x, tuple) and x[0] == "v"}
        eS = sum(1 for u, v in G.edges if u in S and v in S)
        lam = Fraction(eS, len(S))


def is_unicyclic_per_component(G: Graph) -> bool:
    """m(G) <= 1, i.e. every component has at most one cycle."""
    return all(g.e <= g.n for g in G.edge_components())


def max_two_density(F: Graph) -> Fraction:
    """m2(F): max of (e-1)/(v-2) over subgraphs on >= 3 vertices, or 1/2."""
    if F.n < 3:
        return HALF
    best = _max_edges_by_size(F)
    return max([HALF] + [Fraction(best[k] - 1, k - 2) for k in range(3, F.n + 1)])


def family_two_density(fam: GraphFamily) -> Fraction:
    return min(max_two_density(F) for F in fam)


def mixed_two_density(H: Graph, L: Graph) -> Fraction:
    """Mixed 2-density m2(H, L); requires m2(H) >= m2(L).

    Subgraphs without edges contribute nothing, so the maximum runs over
    vertex sets spanning at least one edge (this also keeps the denominator
    positive).
    """
    mh, ml = max_two_density(H), max_two_density(L)
    if mh < ml:
        raise OrderingError(f"m2(H)={mh} < m2(L)={ml}; swap the arguments")
    if H.e == 0:
        return Fraction(0)
    best = _max_edges_by_size(H)
    inv = 1 / ml
    return max(Fraction(best[k]) / (k - 2 + inv) for k in range(2, H.n + 1) if best[k] > 0)


# -- balancedness ---------------------------------------------------------------


def strict_balance_violation(F: Graph) -> Graph | None:
    """None if F is strictly 2-balanced, otherwise a proper subgraph whose
    2-density is at least m2(F)."""
    if F.n < 3:
        raise DomainError("strict 2-balancedness needs at least 3 vertices")
    best = _max_edges_by_size(F)
    whole = Fraction(F.e - 1, F.n - 2)
    if whole <= HALF:
        return Graph(2, ((0, 1),))
    for k in range(3, F.n):
        if Fraction(best[k] - 1, k - 2) >= whole:
            masks = _masks_with(F, k, best[k])
            return F.induced(_bits(min(masks, key=lambda m: _edge_key(F, m))))
    return None


def is_strictly_two_balanced(F: Graph) -> tuple[bool, Graph | None]:
    """``(True, None)`` or ``(False, violating_subgraph)``."""
    bad = strict_balance_violation(F)
    return bad is None, bad


def _edge_key(F: Graph, mask: int) -> tuple:
    return tuple(e for e in F.edges if mask >> e[0] & 1 and mask >> e[1] & 1)


def densest_balanced_subgraph(F: Graph) -> Graph:
    """Strictly 2-balanced subgraph with the same m2, chosen with fewest
    vertices and then the lexicographically least edge list."""
    m2 = max_two_density(F)
    if m2 <= 1:
        raise DomainError(f"m2 = {m2} <= 1: no strictly 2-balanced reduction (forest case)")
    best = _max_edges_by_size(F)
    for k in range(3, F.n + 1):
        if Fraction(best[k] - 1, k - 2) == m2:
            masks = _masks_with(F, k, best[k])
            return F.induced(_bits(min(masks, key=lambda m: _edge_key(F, m))))
    raise FalsificationError("m2 attained by no vertex subset")


def strictly_balanced_reduction(fam: GraphFamily) -> GraphFamily:
    members = tuple(densest_balanced_subgraph(F) for F in fam)
    return GraphFamily(members, fam.names)


# -- lemma kernels -------------------------------------------------------------


def edge_boundary(F: Graph, W: Iterable[int]) -> int:
    """Number of edges of F with at least one endpoint in W."""
    W = set(W)
    if not W <= set(range(F.n)):
        raise DomainError(f"{sorted(W)} is not a subset of V(F)")
    return sum(1 for u, v in F.edges if u in W or v in W)


def helpful_lemma_check(F: Graph) -> tuple[bool, tuple[int, ...] | None]:
    """Check edge_boundary(F, W) > m2(F)|W| for all 1 <= |W| <= v_F - 3."""
    ok, _ = is_strictly_two_balanced(F)
    if not ok:
        raise DomainError("helpful_lemma_check needs a strictly 2-balanced graph")
    m2 = Fraction(F.e - 1, F.n - 2)
    for size in range(1, F.n - 2):
        for W in combinations(range(F.n), size):
            if not edge_boundary(F, W) > m2 * size:
                return False, W
    return True, None


@dataclass(frozen=True)
class DischargeWitness:
    case: str  # "Da", "Db" or "Dc"
    vertices: tuple[int, ...]
    degrees: tuple[int, ...]


def discharging_case(G: Graph, k: int, eps: Fraction) -> DischargeWitness:
    """Find a reducible configuration guaranteed when e/v <= k + eps.

    Da: a vertex of degree <= 2k.  Db (only if eps >= 1/2): a vertex of
    degree 2k+1 with a neighbour of degree <= 2k+2.  Dc (only if eps >= 7/8):
    a vertex of degree 2k+3 with two neighbours of degree 2k+1.  The first
    case found in that preference order is returned.
    """
    eps = Fraction(eps)
    if k < 1 or not (0 <= eps < 1):
        raise DomainError("need k >= 1 and 0 <= eps < 1")
    if G.n == 0 or Fraction(G.e, G.n) > k + eps:
        raise DomainError(f"e/v must be at most {k + eps}")
    deg = G.degrees
    for u in range(G.n):
        if deg[u] <= 2 * k:
            return DischargeWitness("Da", (u,), (deg[u],))
    if eps >= HALF:
        for u in range(G.n):
            if deg[u] == 2 * k + 1:
                for w in sorted(G.adj[u]):
                    if deg[w] <= 2 * k + 2:
                        return DischargeWitness("Db", (u, w), (deg[u], deg[w]))
    if eps >= Fraction(7, 8):
        for u in range(G.n):
            if deg[u] == 2 * k + 3:
                low = [w for w in sorted(G.adj[u]) if deg[w] == 2 * k + 1]
                if len(low) >= 2:
                    return DischargeWitness("Dc", (u, low[0], low[1]), (deg[u], deg[low[0]], deg[low[1]]))
    raise FalsificationError(f"no discharging configuration in {G.edges} for k={k}, eps={eps}")


def split_density(x: Fraction) -> tuple[int, Fraction]:
    """Write x = k + eps with integer k and eps in [0, 1)."""
    k = math.floor(x)
    return k, x - k
