"""Hypergraphs of copies, clusters, cores and peeling, and the odd-cycle
auxiliary hypergraph used for forest families."""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from itertools import product
from typing import Hashable, Sequence

from .classify import classify, is_cycle, is_path, nonstar_components
from .copies import enumerate_copies
from .errors import DomainError
from .graph import Graph, GraphFamily


@dataclass(frozen=True)
class Hypergraph:
    """Vertices are arbitrary labels; hyperedges are sets of vertex indices.

    Duplicate hyperedges (as sets) are dropped, keeping the first provenance.
    """

    vertices: tuple[Hashable, ...]
    edges: tuple[frozenset[int], ...] = ()
    provenance: tuple[str, ...] = ()

    def __post_init__(self):
        prov = tuple(self.provenance) or tuple(f"e{i}" for i in range(len(self.edges)))
        if len(prov) != len(self.edges):
            raise DomainError("one provenance tag per hyperedge is required")
        seen, edges, tags = set(), [], []
        for e, tag in zip(self.edges, prov):
            e = frozenset(e)
            if not e:
                raise DomainError("hyperedges must be non-empty")
            if any(not 0 <= x < len(self.vertices) for x in e):
                raise DomainError(f"hyperedge {sorted(e)} uses an unknown vertex")
            if e not in seen:
                seen.add(e)
                edges.append(e)
                tags.append(tag)
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "provenance", tuple(tags))

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def incidence(self) -> list[list[int]]:
        """``inc[v]`` = indices of hyperedges containing v."""
        inc: list[list[int]] = [[] for _ in self.vertices]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    def covered(self) -> set[int]:
        return set().union(*self.edges) if self.edges else set()

    def sub(self, edge_ids: Sequence[int], keep_vertices: bool = True) -> Hypergraph:
        """Subhypergraph on the given hyperedges.  With ``keep_vertices=False``
        only covered vertices survive (relabelled in order)."""
        ids = list(edge_ids)
        if keep_vertices:
            return Hypergraph(self.vertices, tuple(self.edges[i] for i in ids), tuple(self.provenance[i] for i in ids))
        vs = sorted(set().union(*(self.edges[i] for i in ids))) if ids else []
        pos = {v: j for j, v in enumerate(vs)}
        return Hypergraph(
            tuple(self.vertices[v] for v in vs),
            tuple(frozenset(pos[v] for v in self.edges[i]) for i in ids),
            tuple(self.provenance[i] for i in ids),
        )

    def edge_components(self) -> list[list[int]]:
        """Hyperedge indices grouped by connectivity (sharing a vertex)."""
        parent = list(range(self.num_edges))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for ids in self.incidence():
            for j in ids[1:]:
                a, b = find(ids[0]), find(j)
                if a != b:
                    parent[max(a, b)] = min(a, b)
        groups: dict[int, list[int]] = {}
        for i in range(self.num_edges):
            groups.setdefault(find(i), []).append(i)
        return sorted(groups.values())

    def is_connected(self) -> bool:
        """Connected incidence graph with every vertex covered."""
        if self.num_vertices == 0:
            return False
        return len(self.covered()) == self.num_vertices and len(self.edge_components()) == 1

    def labelled_edges(self) -> list[tuple]:
        return [tuple(self.vertices[v] for v in sorted(e)) for e in self.edges]


# -- copies of a family --------------------------------------------------------


def f_hypergraph(G: Graph, fam: GraphFamily) -> Hypergraph:
    """Hypergraph on E(G) with one hyperedge per copy of a family member."""
    idx = G.edge_index
    edges, prov = [], []
    for name, F in zip(fam.names, fam.members):
        for j, c in enumerate(enumerate_copies(F, G)):
            edges.append(frozenset(idx[e] for e in c))
            prov.append(f"{name}#{j}")
    return Hypergraph(G.edges, tuple(edges), tuple(prov))


def is_f_cluster(G: Graph, fam: GraphFamily) -> bool:
    if G.e == 0:
        raise DomainError("a cluster needs at least one edge")
    return f_hypergraph(G, fam).is_connected()


# -- cores and peeling -----------------------------------------------------------


@dataclass(frozen=True)
class CoreViolation:
    kind: str  # "disconnected" or "no-witness"
    edge: int | None = None
    vertex: int | None = None


def _witnessless_vertex(H: Hypergraph, i: int, inc, alive) -> int | None:
    """Smallest v in edge i with no other live edge meeting edge i exactly in {v}."""
    e = H.edges[i]
    for v in sorted(e):
        if not any(j != i and alive[j] and len(H.edges[j] & e) == 1 for j in inc[v]):
            return v
    return None


def is_core(H: Hypergraph, require_connected: bool = True) -> tuple[bool, CoreViolation | None]:
    """Every (hyperedge e, vertex v in e) has another hyperedge e' with
    e & e' == {v}.  The empty hypergraph is not counted as a core."""
    if H.num_edges == 0:
        return False, CoreViolation("disconnected")
    if require_connected and not H.is_connected():
        return False, CoreViolation("disconnected")
    inc = H.incidence()
    alive = [True] * H.num_edges
    for i in range(H.num_edges):
        v = _witnessless_vertex(H, i, inc, alive)
        if v is not None:
            return False, CoreViolation("no-witness", i, v)
    return True, None


@dataclass(frozen=True)
class PeelTrace:
    removed: tuple[tuple[int, int], ...]  # (hyperedge index in the input, violating vertex)
    residual: Hypergraph
    residual_ids: tuple[int, ...]  # input indices of the surviving hyperedges

    @property
    def empty(self) -> bool:
        return not self.residual_ids


def peel_to_core(H: Hypergraph) -> PeelTrace:
    """Remove, one at a time, the lowest-index hyperedge that has a vertex
    met by no other hyperedge in exactly that vertex.

    Removability only grows as edges disappear, so a heap of candidates
    yields exactly the lowest-index rule.  The residual keeps the original
    vertex labels but only the vertices it still covers.  Singleton
    hyperedges are never removed: no recolouring can make them
    non-monochromatic, so they carry no colourability certificate.
    """
    inc = H.incidence()
    alive = [True] * H.num_edges
    heap = [i for i in range(H.num_edges)
            if len(H.edges[i]) > 1 and _witnessless_vertex(H, i, inc, alive) is not None]
    heapq.heapify(heap)
    queued = set(heap)
    removed = []
    while heap:
        i = heapq.heappop(heap)
        v = _witnessless_vertex(H, i, inc, alive)
        removed.append((i, v))
        alive[i] = False
        for u in H.edges[i]:
            for j in inc[u]:
                if (alive[j] and j not in queued and len(H.edges[j]) > 1
                        and _witnessless_vertex(H, j, inc, alive) is not None):
                    queued.add(j)
                    heapq.heappush(heap, j)
    ids = tuple(i for i in range(H.num_edges) if alive[i])
    return PeelTrace(tuple(removed), H.sub(ids, keep_vertices=False), ids)


def is_f_core(G: Graph, fam: GraphFamily) -> bool:
    """Whether the family hypergraph of G has a spanning connected core.

    Every core subhypergraph survives peeling, and the peel residual has a
    witness for every (edge, vertex) pair, so the residual is the largest
    such subhypergraph.  G is therefore an F-core exactly when the residual
    covers E(G) and is connected.
    """
    if G.e == 0:
        return False
    H = f_hypergraph(G, fam)
    trace = peel_to_core(H)
    R = trace.residual
    return R.num_vertices == G.e and R.is_connected()


# -- 2-colouring -------------------------------------------------------------------


def proper_two_colouring(H: Hypergraph, budget: int | None = None) -> dict[int, int] | None:
    """A 0/1 vertex colouring with no monochromatic hyperedge, or None."""
    from .oracle import Outcome, solve_list_hypergraph

    res = solve_list_hypergraph(
        [0b11] * H.num_vertices,
        [(sorted(e), 0b11) for e in H.edges],
        budget=budget,
        symmetric_palette=True,
    )
    if res.outcome is Outcome.UNDECIDED:
        from .errors import ResourceError

        raise ResourceError("2-colouring search budget exhausted", cap="budget", value=budget)
    if res.outcome is Outcome.NONE:
        return None
    return dict(enumerate(res.assignment))


def is_proper_two_colouring(H: Hypergraph, colour: dict[int, int]) -> bool:
    return all(len({colour[v] for v in e}) == 2 for e in H.edges)


# -- auxiliary odd-cycle hypergraph ------------------------------------------------


def odd_cycles_containing(g: Graph, max_len: int) -> list[int]:
    """Odd lengths l <= max_len with g a subgraph of C_l (g connected)."""
    if is_cycle(g):
        return [g.n] if g.n % 2 == 1 and g.n <= max_len else []
    if is_path(g):
        return [l for l in range(3, max_len + 1, 2) if l >= g.e + 1]
    return []


def aux_hypergraph(fam: GraphFamily, max_cycle_len: int) -> Hypergraph:
    """Odd cycles C3, C5, ... up to the cap; one hyperedge per way of placing
    the non-star components of a C*-member into odd cycles.

    Star-forest members have no non-star component and contribute nothing.
    """
    if max_cycle_len < 3 or max_cycle_len % 2 == 0:
        raise DomainError("the cycle-length cap must be odd and at least 3")
    lengths = list(range(3, max_cycle_len + 1, 2))
    pos = {l: i for i, l in enumerate(lengths)}
    cstar = [(name, F) for name, F in zip(fam.names, fam.members) if classify(F).is_cstar_graph]
    if not cstar:
        raise DomainError("the family has no C*-graph")
    found: dict[frozenset[int], str] = {}
    for name, F in cstar:
        comps = nonstar_components(F)
        if not comps:
            continue
        choices = [odd_cycles_containing(c, max_cycle_len) for c in comps]
        for pick in product(*choices):
            e = frozenset(pos[l] for l in pick)
            found.setdefault(e, f"{name}:" + "+".join(f"C{l}" for l in pick))
    order = sorted(found, key=lambda e: (len(e), sorted(e)))
    return Hypergraph(tuple(f"C{l}" for l in lengths), tuple(order), tuple(found[e] for e in order))


def is_k2_like(H: Hypergraph) -> bool:
    """One hyperedge of size two (ignoring uncovered vertices)."""
    return H.num_edges == 1 and len(H.edges[0]) == 2


def is_triangle_like(H: Hypergraph) -> bool:
    """Three 2-edges forming a triangle (ignoring uncovered vertices)."""
    if H.num_edges != 3 or any(len(e) != 2 for e in H.edges):
        return False
    cov = H.covered()
    return len(cov) == 3
