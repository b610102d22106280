"""Finite simple graphs, graph families and a few named constructions."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import cached_property
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DomainError

Edge = tuple[int, int]


def norm_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    ``edges`` is stored sorted with ``u < v`` in every pair; any iterable of
    pairs is accepted and normalised, but loops, duplicates and out-of-range
    endpoints raise :class:`DomainError`.
    """

    n: int
    edges: tuple[Edge, ...] = ()

    def __post_init__(self):
        if self.n < 0:
            raise DomainError("vertex count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise DomainError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise DomainError(f"edge ({u},{v}) out of range for n={self.n}")
            e = norm_edge(u, v)
            if e in seen:
                raise DomainError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))

    @classmethod
    def from_edges(cls, edges: Iterable[Sequence[int]], n: int | None = None) -> Graph:
        edges = [tuple(e) for e in edges]
        if n is None:
            n = 1 + max((max(e) for e in edges), default=-1)
        return cls(n, tuple(edges))

    # -- basic counts -------------------------------------------------------

    @property
    def e(self) -> int:
        return len(self.edges)

    @property
    def v(self) -> int:
        return self.n

    @cached_property
    def adj(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def adj_mask(self) -> tuple[int, ...]:
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def edge_index(self) -> dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    def max_degree(self) -> int:
        return max(self.degrees, default=0)

    def has_edge(self, u: int, v: int) -> bool:
        return norm_edge(u, v) in self.edge_set

    def support(self) -> list[int]:
        """Vertices incident with at least one edge."""
        return [u for u in range(self.n) if self.adj[u]]

    # -- derived graphs -----------------------------------------------------

    def induced(self, vertices: Iterable[int]) -> Graph:
        """Induced subgraph, relabelled preserving vertex order."""
        vs = sorted(set(vertices))
        pos = {u: i for i, u in enumerate(vs)}
        return Graph(len(vs), tuple((pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos))

    def edge_subgraph(self, edges: Iterable[Edge], compact: bool = False) -> Graph:
        """Subgraph with the given edges; keeps all labels unless ``compact``."""
        es = [norm_edge(*e) for e in edges]
        for e in es:
            if e not in self.edge_set:
                raise DomainError(f"{e} is not an edge")
        if not compact:
            return Graph(self.n, tuple(es))
        vs = sorted({u for e in es for u in e})
        pos = {u: i for i, u in enumerate(vs)}
        return Graph(len(vs), tuple((pos[u], pos[v]) for u, v in es))

    def without_edge(self, e: Edge) -> Graph:
        e = norm_edge(*e)
        return Graph(self.n, tuple(f for f in self.edges if f != e))

    def without_vertices(self, vertices: Iterable[int]) -> Graph:
        """Delete the edges at ``vertices``; labels (and n) are kept."""
        drop = set(vertices)
        return Graph(self.n, tuple(e for e in self.edges if e[0] not in drop and e[1] not in drop))

    def relabel(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``u`` renamed ``perm[u]``."""
        if sorted(perm) != list(range(self.n)):
            raise DomainError("relabelling must be a permutation of the vertices")
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def add_isolated(self, k: int = 1) -> Graph:
        return Graph(self.n + k, self.edges)

    def components(self) -> list[list[int]]:
        """Connected components (including isolated vertices), each sorted."""
        seen = [False] * self.n
        comps = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            stack, comp = [s], []
            while stack:
                u = stack.pop()
                comp.append(u)
                for w in self.adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        stack.append(w)
            comps.append(sorted(comp))
        return comps

    def edge_components(self) -> list[Graph]:
        """Components with at least one edge, as compact graphs."""
        return [self.induced(c) for c in self.components() if len(c) > 1]

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def density(self):
        from fractions import Fraction

        if self.n == 0:
            raise DomainError("density of the empty graph is undefined")
        return Fraction(self.e, self.n)

    def __str__(self) -> str:
        return f"Graph(n={self.n}, e={self.e})"


def disjoint_union(*graphs: Graph) -> Graph:
    edges, off = [], 0
    for g in graphs:
        edges.extend((u + off, v + off) for u, v in g.edges)
        off += g.n
    return Graph(off, tuple(edges))


@dataclass(frozen=True)
class GraphFamily:
    """Ordered, finite, non-empty list of named graphs, each with an edge."""

    members: tuple[Graph, ...]
    names: tuple[str, ...] = field(default=())

    def __post_init__(self):
        members = tuple(self.members)
        if not members:
            raise DomainError("a family needs at least one member")
        for g in members:
            if g.e == 0:
                raise DomainError("family members must have at least one edge")
        names = tuple(self.names) or tuple(f"F{i}" for i in range(len(members)))
        if len(names) != len(members):
            raise DomainError("names and members differ in length")
        object.__setattr__(self, "members", members)
        object.__setattr__(self, "names", names)

    @classmethod
    def of(cls, *items: Graph | str | tuple[str, Graph]) -> GraphFamily:
        """Build from graphs, named-graph strings (``"K4"``) or pairs."""
        members, names = [], []
        for i, it in enumerate(items):
            if isinstance(it, str):
                members.append(named_graph(it))
                names.append(it)
            elif isinstance(it, tuple):
                names.append(it[0])
                members.append(it[1])
            else:
                members.append(it)
                names.append(f"F{i}")
        return cls(tuple(members), tuple(names))

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self):
        return iter(self.members)

    def __getitem__(self, i: int) -> Graph:
        return self.members[i]

    @property
    def label(self) -> str:
        return "|".join(self.names)


# -- named graphs -------------------------------------------------------------


def complete(n: int) -> Graph:
    return Graph(n, tuple(combinations(range(n), 2)))


def empty(n: int) -> Graph:
    return Graph(n)


def cycle(n: int) -> Graph:
    if n < 3:
        raise DomainError("cycles need at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    """Path on ``n`` vertices (``n - 1`` edges); ``path(4)`` is P4."""
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def star(rays: int) -> Graph:
    return Graph(rays + 1, tuple((0, i) for i in range(1, rays + 1)))


def broom(hairs: int) -> Graph:
    """Path a-b-c with ``hairs`` leaves on c; vertices a=0, b=1, c=2."""
    edges = [(0, 1), (1, 2)] + [(2, 3 + i) for i in range(hairs)]
    return Graph(3 + hairs, tuple(edges))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def wheel(rim: int) -> Graph:
    """Hub 0 joined to a cycle on ``rim`` vertices."""
    c = [(1 + i, 1 + (i + 1) % rim) for i in range(rim)]
    return Graph(rim + 1, tuple(c + [(0, 1 + i) for i in range(rim)]))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def bowtie() -> Graph:
    """Two triangles sharing vertex 0."""
    return Graph(5, ((0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)))


_NAMED = [
    (re.compile(r"K(\d+),(\d+)$"), lambda m: complete_bipartite(int(m[1]), int(m[2]))),
    (re.compile(r"K(\d+)$"), lambda m: complete(int(m[1]))),
    (re.compile(r"C(\d+)$"), lambda m: cycle(int(m[1]))),
    (re.compile(r"P(\d+)$"), lambda m: path(int(m[1]))),
    (re.compile(r"S(\d+)$"), lambda m: star(int(m[1]))),
    (re.compile(r"E(\d+)$"), lambda m: empty(int(m[1]))),
    (re.compile(r"W(\d+)$"), lambda m: wheel(int(m[1]))),
    (re.compile(r"broom(\d+)$"), lambda m: broom(int(m[1]))),
    (re.compile(r"petersen$", re.I), lambda m: petersen()),
    (re.compile(r"bowtie$", re.I), lambda m: bowtie()),
]


def named_graph(name: str) -> Graph:
    """Parse names like ``K4``, ``C5``, ``P4``, ``S3``, ``K3,3``, ``broom2``.

    ``A+B`` gives a disjoint union, e.g. ``C3+C5``.
    """
    name = name.strip()
    if "+" in name:
        return disjoint_union(*(named_graph(p) for p in name.split("+")))
    for pat, build in _NAMED:
        m = pat.match(name)
        if m:
            return build(m)
    raise DomainError(f"unknown graph name {name!r}")
