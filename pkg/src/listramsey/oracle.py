"""Exact Ramsey and list-Ramsey decisions for small hosts."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Sequence

from .copies import enumerate_copies
from .engine import Outcome, SolveResult, solve_list_hypergraph
from .errors import DomainError, ResourceError
from .graph import Edge, Graph, GraphFamily, norm_edge

DEFAULT_EDGE_CAP = 30


@dataclass(frozen=True)
class EdgeColouring:
    colour_of: dict[Edge, int]

    def __getitem__(self, e: Edge) -> int:
        return self.colour_of[norm_edge(*e)]

    def colours(self) -> list[int]:
        return sorted(set(self.colour_of.values()))

    def class_graph(self, G: Graph, c: int) -> Graph:
        return Graph(G.n, tuple(e for e in G.edges if self.colour_of[e] == c))

    def as_list(self, G: Graph) -> list[int]:
        return [self.colour_of[e] for e in G.edges]


@dataclass(frozen=True)
class ListAssignment:
    list_of: dict[Edge, tuple[int, ...]]
    r: int

    def __post_init__(self):
        fixed = {}
        for e, lst in self.list_of.items():
            lst = tuple(sorted(set(lst)))
            if len(lst) != self.r:
                raise DomainError(f"list {lst} on {e} does not have {self.r} colours")
            fixed[norm_edge(*e)] = lst
        object.__setattr__(self, "list_of", fixed)

    @classmethod
    def identical(cls, G: Graph, colours: Sequence[int] = (0, 1)) -> ListAssignment:
        return cls({e: tuple(colours) for e in G.edges}, len(colours))

    @classmethod
    def from_lists(cls, G: Graph, lists: Sequence[Sequence[int]]) -> ListAssignment:
        """Lists given in canonical edge order."""
        if len(lists) != G.e:
            raise DomainError("need one list per edge")
        r = len(set(lists[0])) if lists else 2
        return cls({e: tuple(l) for e, l in zip(G.edges, lists)}, r)

    def __getitem__(self, e: Edge) -> tuple[int, ...]:
        return self.list_of[norm_edge(*e)]

    def palette(self) -> list[int]:
        return sorted(set().union(*self.list_of.values())) if self.list_of else []

    def is_identical(self) -> bool:
        return len(set(self.list_of.values())) <= 1

    def restrict(self, G: Graph) -> ListAssignment:
        return ListAssignment({e: self.list_of[e] for e in G.edges}, self.r)


@dataclass
class RamseyVerdict:
    is_ramsey: bool
    witness: EdgeColouring | None
    nodes: int = 0


# -- building the search instance ---------------------------------------------------


def degeneracy_order(G: Graph) -> list[int]:
    """Vertices with the densest core first (reverse of min-degree removal)."""
    deg = list(G.degrees)
    gone = [False] * G.n
    removal = []
    for _ in range(G.n):
        u = min((v for v in range(G.n) if not gone[v]), key=lambda v: (deg[v], v))
        gone[u] = True
        removal.append(u)
        for w in G.adj[u]:
            if not gone[w]:
                deg[w] -= 1
    return removal[::-1]


def edge_order(G: Graph) -> list[int]:
    """Edge indices sorted so each edge comes once both endpoints are reached."""
    pos = {u: i for i, u in enumerate(degeneracy_order(G))}
    keyed = sorted(range(G.e), key=lambda i: (max(pos[G.edges[i][0]], pos[G.edges[i][1]]),
                                             min(pos[G.edges[i][0]], pos[G.edges[i][1]])))
    return keyed


def copy_constraints(G: Graph, members: Sequence[Graph]) -> list[list[int]]:
    """Per member, the copies in G as lists of edge indices."""
    idx = G.edge_index
    return [[sorted(idx[e] for e in c) for c in enumerate_copies(F, G)] for F in members]


def _check_cap(G: Graph, cap: int | None) -> None:
    if cap is not None and G.e > cap:
        raise ResourceError(f"host has {G.e} edges, above the exhaustive-search cap of {cap}", cap="max_edges", value=G.e)


def _to_colouring(G: Graph, res: SolveResult) -> EdgeColouring:
    return EdgeColouring({e: res.assignment[i] for i, e in enumerate(G.edges)})


def _raise_undecided(res: SolveResult, budget) -> None:
    raise ResourceError(f"search undecided: {res.reason}", cap="budget", value=budget)


def solve_colouring(
    G: Graph,
    fam: GraphFamily,
    lists: Sequence[int],
    symmetric: bool,
    budget: int | None = None,
    component_cap: int | None = None,
) -> SolveResult:
    """Lists as bitmasks in canonical edge order; every copy forbids every colour."""
    full = 0
    for m in lists:
        full |= m
    cons = [(c, full) for per in copy_constraints(G, fam.members) for c in per]
    return solve_list_hypergraph(lists, cons, budget=budget, symmetric_palette=symmetric,
                                 order=edge_order(G), component_cap=component_cap)


# -- public operations -------------------------------------------------------------


def good_colouring(
    G: Graph,
    fam: GraphFamily,
    r: int,
    cap: int | None = DEFAULT_EDGE_CAP,
    budget: int | None = None,
) -> EdgeColouring | None:
    """An r-colouring with no monochromatic member, or None if G is r-Ramsey.

    ``cap`` bounds the largest component that survives peeling (the part
    the backtracker actually searches), not the raw edge count.
    """
    if r < 2:
        raise DomainError("r must be at least 2")
    res = solve_colouring(G, fam, [(1 << r) - 1] * G.e, True, budget, cap)
    if res.outcome is Outcome.UNDECIDED:
        if "cap" in res.reason:
            raise ResourceError(f"search undecided: {res.reason}", cap="max_edges", value=max(res.stats["component_sizes"]))
        _raise_undecided(res, budget)
    return None if res.outcome is Outcome.NONE else _to_colouring(G, res)


def is_ramsey(G: Graph, fam: GraphFamily, r: int, **kw) -> RamseyVerdict:
    col = good_colouring(G, fam, r, **kw)
    return RamseyVerdict(col is None, col)


def is_asymmetric_ramsey(
    G: Graph,
    seq: Sequence[Graph],
    cap: int | None = DEFAULT_EDGE_CAP,
    budget: int | None = None,
) -> RamseyVerdict:
    """Whether every len(seq)-colouring has a copy of seq[i] in colour i."""
    k = len(seq)
    if not 2 <= k <= 4:
        raise DomainError("asymmetric queries take 2 to 4 graphs")
    cons = []
    for i, per in enumerate(copy_constraints(G, seq)):
        cons.extend((c, 1 << i) for c in per)
    same = all(F == seq[0] for F in seq)
    res = solve_list_hypergraph([(1 << k) - 1] * G.e, cons, budget=budget, symmetric_palette=same,
                                order=edge_order(G), component_cap=cap)
    if res.outcome is Outcome.UNDECIDED:
        if "cap" in res.reason:
            raise ResourceError(f"search undecided: {res.reason}", cap="max_edges", value=max(res.stats["component_sizes"]))
        _raise_undecided(res, budget)
    if res.outcome is Outcome.NONE:
        return RamseyVerdict(True, None, res.nodes)
    return RamseyVerdict(False, _to_colouring(G, res), res.nodes)


def colouring_from_lists(
    G: Graph,
    fam: GraphFamily,
    L: ListAssignment,
    cap: int | None = DEFAULT_EDGE_CAP,
    budget: int | None = None,
) -> EdgeColouring | None:
    """A colouring from the lists with no monochromatic member, or None."""
    masks = []
    for e in G.edges:
        m = 0
        for c in L[e]:
            m |= 1 << c
        masks.append(m)
    res = solve_colouring(G, fam, masks, L.is_identical(), budget, cap)
    if res.outcome is Outcome.UNDECIDED:
        if "cap" in res.reason:
            raise ResourceError(f"search undecided: {res.reason}", cap="max_edges", value=max(res.stats["component_sizes"]))
        _raise_undecided(res, budget)
    return None if res.outcome is Outcome.NONE else _to_colouring(G, res)


@dataclass
class BadListSearch:
    assignment: ListAssignment | None
    reason: str  # FOUND, EXHAUSTED or BUDGET
    complete: bool  # True when NOT-FOUND is a proof (palette cap >= r * e_G, no budget stop)
    tried: int = 0


def canonical_list_assignments(m: int, r: int, palette_cap: int) -> Iterator[list[tuple[int, ...]]]:
    """List assignments on m edges up to renaming colours: colours appear in
    order of first use along the edge order."""
    from itertools import combinations

    lists: list[tuple[int, ...]] = []

    def rec(i, used):
        if i == m:
            yield list(lists)
            return
        for fresh in range(0, min(r, palette_cap - used) + 1):
            for old in combinations(range(used), r - fresh):
                lists.append(old + tuple(range(used, used + fresh)))
                yield from rec(i + 1, used + fresh)
                lists.pop()

    yield from rec(0, 0)


def find_bad_list_assignment(
    G: Graph,
    fam: GraphFamily,
    r: int,
    palette_cap: int,
    budget: int | None = None,
    cap: int | None = DEFAULT_EDGE_CAP,
) -> BadListSearch:
    """Search canonical r-list assignments for one with no good colouring.

    ``budget`` bounds the number of assignments examined.  Host
    automorphisms are not used for pruning.
    """
    if palette_cap < r:
        raise DomainError("palette cap must be at least r")
    tried = 0
    for lists in canonical_list_assignments(G.e, r, palette_cap):
        if budget is not None and tried >= budget:
            return BadListSearch(None, "BUDGET", False, tried)
        tried += 1
        L = ListAssignment.from_lists(G, lists) if G.e else ListAssignment({}, r)
        if colouring_from_lists(G, fam, L, cap=cap) is None:
            return BadListSearch(L, "FOUND", True, tried)
    return BadListSearch(None, "EXHAUSTED", palette_cap >= r * G.e, tried)


@dataclass
class MinimalityReport:
    is_minimal: bool
    is_ramsey: bool
    certificates: dict[Edge, EdgeColouring] = field(default_factory=dict)
    failed_edge: Edge | None = None


def is_minimally_ramsey(G: Graph, fam: GraphFamily, r: int, **kw) -> MinimalityReport:
    """Edge-minimality: G is Ramsey and every G - e is not.  Isolated
    vertices play no role."""
    if good_colouring(G, fam, r, **kw) is not None:
        return MinimalityReport(False, False)
    certs = {}
    for e in G.edges:
        col = good_colouring(G.without_edge(e), fam, r, **kw)
        if col is None:
            return MinimalityReport(False, True, certs, e)
        certs[e] = col
    return MinimalityReport(True, True, certs)


# -- revalidation -------------------------------------------------------------------


def monochromatic_copies(G: Graph, fam: GraphFamily, col: EdgeColouring) -> list[tuple[int, int]]:
    """(member index, colour) for every colour class containing a member."""
    from .copies import contains

    found = []
    for c in col.colours():
        H = col.class_graph(G, c)
        for i, F in enumerate(fam.members):
            if contains(F, H):
                found.append((i, c))
    return found


def is_good_colouring(G: Graph, fam: GraphFamily, col: EdgeColouring, L: ListAssignment | None = None) -> bool:
    if set(col.colour_of) != set(G.edges):
        return False
    if L is not None and any(col.colour_of[e] not in L[e] for e in G.edges):
        return False
    return not monochromatic_copies(G, fam, col)


def has_asymmetric_copy(G: Graph, seq: Sequence[Graph], col: EdgeColouring) -> bool:
    from .copies import contains

    return any(contains(F, col.class_graph(G, i)) for i, F in enumerate(seq))
