"""Enumeration of (not necessarily induced) copies of a pattern in a host."""

from __future__ import annotations

from typing import Iterator

from .graph import Edge, Graph, norm_edge

Copy = frozenset[Edge]


def _pattern_order(F: Graph) -> list[int]:
    """Non-isolated pattern vertices, each component in BFS order from its
    highest-degree vertex, so every vertex after a component's first has an
    already-placed neighbour."""
    order: list[int] = []
    placed = set()
    for comp in sorted(F.components(), key=lambda c: -max(F.degree(u) for u in c)):
        if len(comp) == 1:
            continue
        root = max(comp, key=lambda u: (F.degree(u), -u))
        queue = [root]
        placed.add(root)
        while queue:
            u = queue.pop(0)
            order.append(u)
            for w in sorted(F.adj[u], key=lambda x: (-F.degree(x), x)):
                if w not in placed:
                    placed.add(w)
                    queue.append(w)
    return order


def embeddings(F: Graph, G: Graph) -> Iterator[dict[int, int]]:
    """Yield injective maps from the non-isolated vertices of ``F`` into
    ``G`` that send edges to edges, in a deterministic order.

    Isolated vertices of ``F`` are left unmapped; callers that care check
    that ``G`` has enough spare vertices.
    """
    order = _pattern_order(F)
    if not order:
        return
    k = len(order)
    pos = {u: i for i, u in enumerate(order)}
    # back[i]: earlier pattern vertices adjacent to order[i]
    back = [[pos[w] for w in F.adj[order[i]] if pos.get(w, k) < i] for i in range(k)]
    need = [F.degree(u) for u in order]
    gdeg = G.degrees
    gadj = G.adj
    image = [-1] * k
    used = set()

    def extend(i):
        if i == k:
            yield {order[j]: image[j] for j in range(k)}
            return
        if back[i]:
            anchor = image[back[i][0]]
            cands = sorted(gadj[anchor])
        else:
            cands = range(G.n)
        for x in cands:
            if x in used or gdeg[x] < need[i]:
                continue
            ok = True
            for j in back[i]:
                if image[j] not in gadj[x]:
                    ok = False
                    break
            if not ok:
                continue
            image[i] = x
            used.add(x)
            yield from extend(i + 1)
            used.discard(x)
        image[i] = -1

    yield from extend(0)


def _isolated(F: Graph) -> int:
    return sum(1 for d in F.degrees if d == 0)


def copy_of(F: Graph, phi: dict[int, int]) -> Copy:
    return frozenset(norm_edge(phi[u], phi[v]) for u, v in F.edges)


def copy_key(c: Copy) -> tuple[Edge, ...]:
    """Lexicographic order on sorted edge lists, used for 'smallest copy'."""
    return tuple(sorted(c))


def enumerate_copies_with_maps(F: Graph, G: Graph) -> dict[Copy, dict[int, int]]:
    """Distinct copies of ``F`` in ``G`` keyed by edge set, each with the
    first embedding found; insertion order is sorted by :func:`copy_key`."""
    if F.e == 0 or F.n - _isolated(F) > G.n:
        return {}
    if G.n - (F.n - _isolated(F)) < _isolated(F):
        return {}
    found: dict[Copy, dict[int, int]] = {}
    for phi in embeddings(F, G):
        c = copy_of(F, phi)
        if c not in found:
            found[c] = phi
    return {c: found[c] for c in sorted(found, key=copy_key)}


def enumerate_copies(F: Graph, G: Graph) -> list[Copy]:
    """All distinct edge sets of subgraphs of ``G`` isomorphic to ``F``.

    Automorphic embeddings collapse to one copy.  The list is sorted by the
    lexicographic order of sorted edge lists.
    """
    return list(enumerate_copies_with_maps(F, G))


def contains(F: Graph, G: Graph) -> bool:
    """Whether ``G`` has a subgraph isomorphic to ``F``."""
    if F.e == 0:
        return F.n <= G.n
    if G.n - (F.n - _isolated(F)) < _isolated(F):
        return False
    return next(embeddings(F, G), None) is not None
