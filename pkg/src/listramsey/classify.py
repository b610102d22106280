"""Classification of forests: stars, brooms, B-graphs and C*-graphs."""

from __future__ import annotations

from dataclasses import dataclass

from .copies import contains
from .graph import Graph, broom


@dataclass(frozen=True)
class ComponentSummary:
    vertices: int
    edges: int
    cycles: int  # cyclomatic number e - v + 1
    kind: str  # star | path | odd_cycle | even_cycle | broom | tree | unicyclic | other


@dataclass(frozen=True)
class GraphClass:
    is_forest: bool
    is_star_forest: bool
    is_broom: bool
    is_b_graph: bool
    is_cstar_graph: bool
    is_unicyclic_per_component: bool
    component_summaries: tuple[ComponentSummary, ...]


def is_star(g: Graph) -> bool:
    """Connected, at least one edge, and one vertex meets every edge."""
    if g.e == 0 or not g.is_connected():
        return False
    return g.e == g.n - 1 and (g.e == 1 or g.max_degree() == g.e)


def is_path(g: Graph) -> bool:
    return g.is_connected() and g.e == g.n - 1 and g.max_degree() <= 2


def is_cycle(g: Graph) -> bool:
    return g.is_connected() and g.n >= 3 and g.e == g.n and all(d == 2 for d in g.degrees)


def in_broom(g: Graph) -> bool:
    """Whether a connected graph embeds into some broom.

    Brooms only grow by adding hairs, so it suffices to test the broom whose
    hair count equals the maximum degree of ``g``.
    """
    if g.e == 0:
        return True
    if g.e != g.n - 1 or g.n > 3 + g.max_degree():
        return False
    return contains(g, broom(g.max_degree()))


def in_odd_cycle(g: Graph) -> bool:
    """Connected subgraphs of odd cycles: paths, and odd cycles themselves."""
    return is_path(g) or (is_cycle(g) and g.n % 2 == 1)


def smallest_odd_cycle_containing(g: Graph) -> int:
    """Length of the shortest odd cycle containing the connected graph ``g``."""
    if is_cycle(g):
        if g.n % 2 == 0:
            raise ValueError("an even cycle lies in no odd cycle")
        return g.n
    if not is_path(g):
        raise ValueError("only paths and odd cycles lie in odd cycles")
    need = max(3, g.e + 1)
    return need if need % 2 == 1 else need + 1


def _kind(g: Graph) -> str:
    cyc = g.e - g.n + 1
    if is_star(g):
        return "star"
    if is_path(g):
        return "path"
    if is_cycle(g):
        return "odd_cycle" if g.n % 2 else "even_cycle"
    if cyc == 0:
        return "broom" if in_broom(g) else "tree"
    if cyc == 1:
        return "unicyclic"
    return "other"


def classify(F: Graph) -> GraphClass:
    comps = F.edge_components()
    summaries = tuple(ComponentSummary(g.n, g.e, g.e - g.n + 1, _kind(g)) for g in comps)
    forest = all(s.cycles == 0 for s in summaries)
    stars = all(is_star(g) for g in comps)
    b_graph = all(in_broom(g) for g in comps)
    cstar = all(is_star(g) or in_odd_cycle(g) for g in comps)
    broom_flag = len(comps) == 1 and F.n == comps[0].n and any(
        comps[0].n == 3 + b and comps[0].e == 2 + b and contains(comps[0], broom(b)) and contains(broom(b), comps[0])
        for b in [comps[0].n - 3] if b >= 0
    )
    return GraphClass(
        is_forest=forest,
        is_star_forest=stars,
        is_broom=broom_flag,
        is_b_graph=b_graph,
        is_cstar_graph=cstar,
        is_unicyclic_per_component=all(s.cycles <= 1 for s in summaries),
        component_summaries=summaries,
    )


def broom_hairs_needed(X: Graph) -> int:
    """Fewest hairs b such that every component of the B-graph X embeds in broom(b)."""
    need = 0
    for g in X.edge_components():
        if not in_broom(g):
            raise ValueError("not a B-graph")
        b = 0
        while not contains(g, broom(b)):
            b += 1
        need = max(need, b)
    return need


def star_components(Y: Graph) -> list[Graph]:
    return [g for g in Y.edge_components() if is_star(g)]


def nonstar_components(Y: Graph) -> list[Graph]:
    return [g for g in Y.edge_components() if not is_star(g)]
