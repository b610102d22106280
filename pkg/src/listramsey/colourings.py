"""Explicit colouring algorithms for sparse hosts.

Colours are palette integers; where a construction talks about "red" and
"blue" on a component with identical lists ``(a, b)``, red is ``a`` and
blue is ``b``.
"""

from __future__ import annotations

import logging
import random
from collections import deque
from itertools import combinations, permutations, product

import networkx as nx

from .density import max_density
from .errors import DomainError, FalsificationError
from .graph import Edge, Graph, GraphFamily, complete, norm_edge
from .oracle import EdgeColouring, ListAssignment, colouring_from_lists, is_good_colouring

log = logging.getLogger(__name__)


# -- orientations and cycles ----------------------------------------------------


def find_cycle(G: Graph, vertices) -> list[int] | None:
    """The cycle of a component with exactly one cycle, as a vertex list in
    cyclic order, starting at its smallest vertex and heading to the smaller
    neighbour on the cycle.  None for trees."""
    vs = set(vertices)
    deg = {u: len(G.adj[u] & vs) for u in vs}
    queue = deque(u for u in vs if deg[u] <= 1)
    gone = set()
    while queue:
        u = queue.popleft()
        if u in gone:
            continue
        gone.add(u)
        for w in G.adj[u]:
            if w in vs and w not in gone:
                deg[w] -= 1
                if deg[w] == 1:
                    queue.append(w)
    ring = vs - gone
    if not ring:
        return None
    start = min(ring)
    nbrs = sorted(w for w in G.adj[start] if w in ring)
    cyc, prev, cur = [start], start, nbrs[0]
    while cur != start:
        cyc.append(cur)
        nxt = [w for w in G.adj[cur] if w in ring and w != prev]
        prev, cur = cur, nxt[0]
    return cyc


def orient_out_degree_one(G: Graph, vertices=None) -> dict[int, int]:
    """``out[u] = w`` for an orientation with out-degree at most one.

    Works when each component has at most one cycle: the cycle is directed
    around, every other vertex points towards the cycle (or towards the
    smallest vertex of a tree component).
    """
    vs = set(range(G.n)) if vertices is None else set(vertices)
    sub = Graph(G.n, tuple(e for e in G.edges if e[0] in vs and e[1] in vs))
    out: dict[int, int] = {}
    for comp in sub.components():
        if len(comp) == 1:
            continue
        ce = sum(1 for u in comp for w in sub.adj[u] if u < w)
        if ce > len(comp):
            raise DomainError("a component has more than one cycle")
        cyc = find_cycle(sub, comp)
        if cyc is not None:
            for i, u in enumerate(cyc):
                out[u] = cyc[(i + 1) % len(cyc)]
            roots = cyc
        else:
            roots = [min(comp)]
        seen = set(roots)
        queue = deque(roots)
        while queue:
            u = queue.popleft()
            for w in sorted(sub.adj[u]):
                if w not in seen:
                    seen.add(w)
                    out[w] = u
                    queue.append(w)
    return out


def _check_sparse(G: Graph, L: ListAssignment) -> None:
    if max_density(G) > 1:
        raise DomainError("the host must have at most one cycle per component (m(G) <= 1)")
    if L.r < 2:
        raise DomainError("lists must have at least two colours")
    missing = [e for e in G.edges if e not in L.list_of]
    if missing:
        raise DomainError(f"no list for edges {missing[:3]}")


def _first_not(lst, banned) -> int:
    for c in lst:
        if c not in banned:
            return c
    raise FalsificationError(f"no colour in {lst} avoids {banned}")


# -- nonrepetitive colourings ------------------------------------------------------


def _cycle_lists_identical(L: ListAssignment, cyc) -> bool:
    ell = len(cyc)
    return len({L[norm_edge(cyc[i], cyc[(i + 1) % ell])] for i in range(ell)}) == 1


def _nonrepetitive_component(G: Graph, comp: list[int], L: ListAssignment,
                             cycle_colours: list[int] | None = None) -> dict[Edge, int] | None:
    """Nonrepetitive colouring of one component, or None if its cycle is odd
    with identical 2-lists.  ``cycle_colours`` (for the cycle as returned by
    :func:`find_cycle`) overrides the cycle step; the tree edges then still
    follow the head rule, which for identical lists is the parity rule."""
    out = orient_out_degree_one(G, comp)
    col: dict[Edge, int] = {}
    cyc = find_cycle(G, comp)
    if cyc is not None:
        ell = len(cyc)
        ce = [norm_edge(cyc[i], cyc[(i + 1) % ell]) for i in range(ell)]  # ce[i] = (v_i -> v_{i+1})
        if cycle_colours is not None:
            col.update(zip(ce, cycle_colours))
        elif L.r == 2 and _cycle_lists_identical(L, cyc):
            if ell % 2 == 1:
                return None
            a, b = L[ce[0]]
            for i, e in enumerate(ce):
                col[e] = a if i % 2 == 0 else b
        else:
            start = c0 = None
            for i in range(ell):
                for c in L[ce[i]]:
                    if len([x for x in L[ce[(i + 1) % ell]] if x != c]) >= 2:
                        start, c0 = i, c
                        break
                if start is not None:
                    break
            if start is None:
                raise FalsificationError("no starting edge for the cycle colouring")
            e = [ce[(start + j) % ell] for j in range(ell)]  # e[0] plays the role of v1v2
            col[e[0]] = c0
            # then v_l v_1, v_{l-1} v_l, ..., v_3 v_4: each differs from its successor
            for j in range(ell - 1, 1, -1):
                nxt = col[e[(j + 1) % ell]]
                col[e[j]] = _first_not(L[e[j]], {nxt})
            col[e[1]] = _first_not(L[e[1]], {c0, col[e[2 % ell]]})
    # tree edges, outwards from the cycle or root so the head's out-edge is known
    for u in _outward_order(G, comp, out):
        if u not in out or norm_edge(u, out[u]) in col:
            continue
        w = out[u]
        e = norm_edge(u, w)
        banned = {col[norm_edge(w, out[w])]} if w in out else set()
        col[e] = _first_not(L[e], banned)
    return col


def _outward_order(G: Graph, comp, out) -> list[int]:
    """Vertices in order of distance from the sinks / cycle of ``out``."""
    children: dict[int, list[int]] = {}
    for u, w in out.items():
        children.setdefault(w, []).append(u)
    cyc = find_cycle(G, comp)
    roots = cyc if cyc is not None else [u for u in comp if u not in out and G.adj[u]]
    order, seen = [], set(roots)
    queue = deque(roots)
    while queue:
        u = queue.popleft()
        order.append(u)
        for w in sorted(children.get(u, [])):
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return order


def nonrepetitive_colouring(G: Graph, L: ListAssignment) -> EdgeColouring | None:
    """Colour so each edge differs from the out-edge at its head, under an
    orientation with out-degree at most one.  Every colour class is then a
    star forest.

    Returns None for the one impossible case: an odd cycle with identical
    2-colour lists.  Isolated vertices are ignored for connectivity.
    """
    _check_sparse(G, L)
    comps = [c for c in G.components() if len(c) > 1]
    if len(comps) > 1:
        raise DomainError("nonrepetitive_colouring expects a connected host")
    if not comps:
        return EdgeColouring({})
    col = _nonrepetitive_component(G, comps[0], L)
    return None if col is None else EdgeColouring(col)


def is_nontrivial(G: Graph, comp, L: ListAssignment) -> bool:
    """Odd cycle with identical 2-lists on its edges.

    Only the cycle's lists matter: the cycle of an out-degree-one
    orientation is always directed, so a nonrepetitive colouring exists iff
    the cycle has one, whatever lists the trees carry.
    """
    cyc = find_cycle(G, comp)
    if cyc is None or len(cyc) % 2 == 0 or L.r != 2:
        return False
    return _cycle_lists_identical(L, cyc)


def cstar_colouring(G: Graph, L: ListAssignment) -> EdgeColouring:
    """Every monochromatic component is a star or an odd cycle.

    Odd cycles with identical 2-lists are coloured red all round; tree edges
    then alternate by distance from the cycle, starting with blue next to it.
    """
    _check_sparse(G, L)
    col: dict[Edge, int] = {}
    for comp in G.components():
        if len(comp) == 1:
            continue
        if not is_nontrivial(G, comp, L):
            col.update(_nonrepetitive_component(G, comp, L))
            continue
        cyc = find_cycle(G, comp)
        red, _ = L[norm_edge(cyc[0], cyc[1])]
        col.update(_nonrepetitive_component(G, comp, L, [red] * len(cyc)))
    return EdgeColouring(col)


def broom_colouring(G: Graph, L: ListAssignment) -> EdgeColouring:
    """Every monochromatic component is a star, except one broom per odd
    cycle with identical 2-lists.

    On such a cycle v1..v_{2l+1}, the edges v1v2, v3v4, ..., v_{2l-1}v_{2l}
    are red and the rest blue, so the only monochromatic 2-path is
    v_{2l} v_{2l+1} v1.  Tree edges at v_i avoid the colour of v_i v_{i+1}
    and alternate outwards.
    """
    _check_sparse(G, L)
    col: dict[Edge, int] = {}
    for comp in G.components():
        if len(comp) == 1:
            continue
        if not is_nontrivial(G, comp, L):
            col.update(_nonrepetitive_component(G, comp, L))
            continue
        cyc = find_cycle(G, comp)  # v1 = smallest, v2 = its smaller cycle neighbour
        ell = len(cyc)
        red, blue = L[norm_edge(cyc[0], cyc[1])]
        ring = [red if i % 2 == 0 and i < ell - 1 else blue for i in range(ell)]
        col.update(_nonrepetitive_component(G, comp, L, ring))
    return EdgeColouring(col)


# -- forests in graphs of maximum degree three ----------------------------------------


def forest_list_colouring(G: Graph, L: ListAssignment) -> EdgeColouring:
    """2-list colouring of a graph with maximum degree 3 with acyclic classes.

    Peel a vertex of degree at most 2, or one whose incident lists differ,
    and give its edges distinct colours.  Otherwise the rest is cubic with
    identical lists per component: remove a shortest cycle v1..vl, colour
    the path v1..vl and the off-cycle edge at v1 red, and v1vl and the other
    off-cycle edges blue.
    """
    if G.max_degree() > 3:
        raise DomainError("maximum degree must be at most 3")
    if L.r != 2:
        raise DomainError("lists must have two colours")
    col: dict[Edge, int] = {}
    steps = []  # ("v", vertex, edges) or ("c", cycle, off-edges)
    edges = set(G.edges)
    adj = {u: set(G.adj[u]) for u in range(G.n)}

    def drop_vertex(u):
        es = [norm_edge(u, w) for w in adj[u]]
        for w in list(adj[u]):
            adj[w].discard(u)
        adj[u].clear()
        for e in es:
            edges.discard(e)
        return es

    while edges:
        pick = None
        for u in range(G.n):
            d = len(adj[u])
            if d == 0:
                continue
            if d <= 2 or len({L[norm_edge(u, w)] for w in adj[u]}) > 1:
                pick = u
                break
        if pick is not None:
            steps.append(("v", pick, drop_vertex(pick)))
            continue
        cyc = _shortest_cycle(adj, min(u for u in range(G.n) if adj[u]))
        ell = len(cyc)
        path = [norm_edge(cyc[i], cyc[i + 1]) for i in range(ell - 1)]
        closing = norm_edge(cyc[-1], cyc[0])
        off = []
        for i, u in enumerate(cyc):
            rest = [w for w in adj[u] if w != cyc[i - 1] and w != cyc[(i + 1) % ell]]
            if len(rest) != 1:
                raise FalsificationError("shortest cycle has a chord in a cubic graph")
            off.append(norm_edge(u, rest[0]))
        for u in cyc:
            drop_vertex(u)
        steps.append(("c", cyc, (path, closing, off)))

    for kind, a, b in reversed(steps):
        if kind == "v":
            es = b
            for choice in product(*(L[e] for e in es)):
                if len(set(choice)) == len(choice):
                    col.update(zip(es, choice))
                    break
            else:
                raise FalsificationError(f"no distinct colours at vertex {a}")
        else:
            path, closing, off = b
            red, blue = L[closing]
            for e in path:
                col[e] = red
            col[off[0]] = red
            col[closing] = blue
            for e in off[1:]:
                col[e] = blue
    result = EdgeColouring(col)
    for c in result.colours():
        H = result.class_graph(G, c)
        if not nx.is_forest(nx.Graph(list(H.edges))) and H.e:
            raise FalsificationError(f"colour {c} contains a cycle")
    return result


def _shortest_cycle(adj, start_hint) -> list[int]:
    """A shortest cycle of the graph (chordless), by BFS from every vertex."""
    best = None
    for s in sorted(u for u in adj if adj[u]):
        parent = {s: None}
        depth = {s: 0}
        queue = deque([s])
        while queue:
            u = queue.popleft()
            if best is not None and 2 * depth[u] + 1 >= len(best):
                break
            for w in sorted(adj[u]):
                if w not in depth:
                    depth[w] = depth[u] + 1
                    parent[w] = u
                    queue.append(w)
                elif parent[u] != w:
                    # cycle through s via u and w
                    pu, pw = [u], [w]
                    while parent[pu[-1]] is not None:
                        pu.append(parent[pu[-1]])
                    while parent[pw[-1]] is not None:
                        pw.append(parent[pw[-1]])
                    if pu[-1] != pw[-1]:
                        continue
                    su, sw = set(pu), set(pw)
                    if len(su & sw) != 1:
                        continue
                    cyc = pu[::-1] + pw[:-1]
                    if best is None or len(cyc) < len(best):
                        best = cyc
    if best is None:
        raise FalsificationError("a cubic graph must contain a cycle")
    return best


# -- K5 and K6 ------------------------------------------------------------------------


def _availability(G: Graph, L: ListAssignment) -> dict[int, list[Edge]]:
    av: dict[int, list[Edge]] = {}
    for e in G.edges:
        for c in L[e]:
            av.setdefault(c, []).append(e)
    return av


def _nx(edges) -> nx.Graph:
    return nx.Graph(list(edges))


_K5_HAMILTON = sorted(
    {frozenset(norm_edge(p[i], p[(i + 1) % 5]) for i in range(5)) for p in ((0,) + q for q in permutations(range(1, 5)))},
    key=sorted,
)
_K5_MINUS_K3 = _nx([(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (0, 1)])
_K4 = _nx(combinations(range(4), 2))
_K4_MINUS = _nx([(0, 1), (0, 2), (0, 3), (1, 2), (1, 3)])
_K3 = _nx([(0, 1), (1, 2), (0, 2)])
_BOWTIE = _nx([(0, 1), (0, 2), (1, 2), (0, 3), (0, 4), (3, 4)])


def _iso(edges, pattern) -> bool:
    return nx.is_isomorphic(_nx(edges), pattern)


def _has_mono_triangle(col: dict[Edge, int], vertices) -> bool:
    for a, b, c in combinations(sorted(vertices), 3):
        x = col.get((a, b)), col.get((a, c)), col.get((b, c))
        if None not in x and x[0] == x[1] == x[2]:
            return True
    return False


def colour_k5_for_k3(L: ListAssignment, return_case: bool = False):
    """Triangle-free colouring of K5 from 2-lists, by the case analysis on
    the availability graphs E_c = {e : c in L(e)}.

    Cases, tried in this order: some E_c contains a 5-cycle ("C5"); some
    E_c has an edge in no triangle of E_c ("edge-not-in-triangle"); some
    E_c is K5 minus a triangle ("K5-minus-K3"); some E_c is K4 or K4 minus
    an edge ("K4").  If none applies every E_c is a triangle or a bowtie,
    which contradicts sum |E_c| = 20; reaching that point raises.
    """
    G = complete(5)
    if L.r != 2 or set(L.list_of) != set(G.edges):
        raise DomainError("colour_k5_for_k3 needs a 2-list assignment on K5")
    av = _availability(G, L)
    col: dict[Edge, int] = {}
    case = None

    for c in sorted(av):
        Ec = set(av[c])
        for ring in _K5_HAMILTON:
            if ring <= Ec:
                for e in G.edges:
                    col[e] = c if e in ring else _first_not(L[e], {c})
                case = "C5"
                break
        if case:
            break

    if case is None:
        for c in sorted(av):
            Ec = set(av[c])
            for e in sorted(Ec):
                a, b = e
                if not any(norm_edge(a, w) in Ec and norm_edge(b, w) in Ec for w in range(5) if w not in e):
                    rest = G.without_edge(e)
                    sub = sparse_triangle_free_colouring(rest, ListAssignment({f: L[f] for f in rest.edges}, 2))
                    col = dict(sub.colour_of)
                    col[e] = c
                    case = "edge-not-in-triangle"
                    break
            if case:
                break

    if case is None:
        for c in sorted(av):
            if _iso(av[c], _K5_MINUS_K3):
                deg = {u: sum(1 for e in av[c] if u in e) for u in range(5)}
                ab = sorted(u for u in range(5) if deg[u] == 4)
                tri = [u for u in range(5) if u not in ab]
                for e in av[c]:
                    col[e] = c
                col[norm_edge(*ab)] = _first_not(L[norm_edge(*ab)], {c})
                tri_edges = [norm_edge(x, y) for x, y in combinations(tri, 2)]
                for choice in product(*(L[e] for e in tri_edges)):
                    if len(set(choice)) > 1:
                        col.update(zip(tri_edges, choice))
                        break
                case = "K5-minus-K3"
                break

    if case is None:
        for c in sorted(av):
            if _iso(av[c], _K4) or _iso(av[c], _K4_MINUS):
                H = _nx(av[c])
                four = sorted(H.nodes)
                # a 4-cycle inside E_c
                ring = None
                for perm in ((0, 1, 2, 3), (0, 1, 3, 2), (0, 2, 1, 3)):
                    cyc = [four[i] for i in perm]
                    es = [norm_edge(cyc[i], cyc[(i + 1) % 4]) for i in range(4)]
                    if all(H.has_edge(*e) for e in es):
                        ring = es
                        break
                for e in ring:
                    col[e] = c
                for e in av[c]:
                    if e not in col:
                        col[e] = _first_not(L[e], {c})
                for e in G.edges:
                    if e in col:
                        continue
                    for x in L[e]:
                        col[e] = x
                        if not _has_mono_triangle(col, range(5)):
                            break
                    else:
                        raise FalsificationError(f"greedy step stuck at {e} in the K4 case")
                case = "K4"
                break

    if case is None:
        sizes = {c: len(es) for c, es in av.items()}
        if all(_iso(es, _K3) or _iso(es, _BOWTIE) for es in av.values()):
            raise FalsificationError(f"every colour class is a triangle or bowtie, sizes {sizes} sum to 20: impossible")
        raise FalsificationError(f"availability graphs fit no case: {sizes}")

    result = EdgeColouring(col)
    if not is_good_colouring(G, GraphFamily.of("K3"), result, L):
        raise FalsificationError(f"case {case} produced a monochromatic triangle")
    log.debug("colour_k5_for_k3 case %s", case)
    return (result, case) if return_case else result


_K4_QUADS = [tuple(q) for q in combinations(range(6), 4)]


def _k6_ok(col: dict[Edge, int]) -> bool:
    for q in _K4_QUADS:
        cs = {col[norm_edge(a, b)] for a, b in combinations(q, 2)}
        if len(cs) == 1:
            return False
    return True


def colour_k6_for_k4(L: ListAssignment, seed: int = 0, tries: int = 64, return_tries: bool = False):
    """Colouring of K6 from 2-lists with no monochromatic K4.

    Identical lists get K_{3,3} in one colour and two triangles in the
    other.  Otherwise uniform random choices from the lists are tried; each
    works with probability at least 1 - 15 * 2^-5, and after ``tries``
    failures an exhaustive search takes over.
    """
    G = complete(6)
    if L.r != 2 or set(L.list_of) != set(G.edges):
        raise DomainError("colour_k6_for_k4 needs a 2-list assignment on K6")
    if L.is_identical():
        a, b = L[(0, 1)]
        col = {e: (a if (e[0] < 3) != (e[1] < 3) else b) for e in G.edges}
        res = EdgeColouring(col)
        return (res, 0) if return_tries else res
    rng = random.Random(seed)
    for k in range(1, tries + 1):
        col = {e: rng.choice(L[e]) for e in G.edges}
        if _k6_ok(col):
            res = EdgeColouring(col)
            return (res, k) if return_tries else res
    log.info("colour_k6_for_k4: falling back to exhaustive search after %d tries", tries)
    res = colouring_from_lists(G, GraphFamily.of("K4"), L)
    if res is None:
        raise FalsificationError("K6 has a bad 2-list assignment for K4")
    return (res, tries + 1) if return_tries else res


# -- triangle-free colourings of graphs with density at most two -------------------------


def sparse_triangle_free_colouring(G: Graph, L: ListAssignment, trace: list | None = None) -> EdgeColouring:
    """Triangle-free colouring from 2-lists when m(G) <= 2.

    Repeatedly delete a vertex v whose neighbourhood G[N(v)] has at most one
    cycle per component; after colouring the rest, each uv avoids the colour
    of u's out-edge in an out-degree-one orientation of G[N(v)].  If no such
    vertex is left, K5 components go to :func:`colour_k5_for_k3` and anything
    else to the exhaustive oracle; ``trace`` records which path was taken.
    """
    if L.r != 2:
        raise DomainError("lists must have two colours")
    if G.e and max_density(G) > 2:
        raise DomainError("need m(G) <= 2")
    trace = [] if trace is None else trace
    adj = {u: set(G.adj[u]) for u in range(G.n)}
    steps = []
    while True:
        pick = None
        for u in range(G.n):
            if not adj[u]:
                continue
            nb = adj[u]
            es = [(a, b) for a in nb for b in adj[a] if b in nb and a < b]
            H = Graph(G.n, tuple(es))
            if all(h.e <= h.n for h in H.edge_components()):
                pick = u
                out = orient_out_degree_one(H, nb)
                break
        if pick is None:
            break
        steps.append((pick, sorted(adj[pick]), out))
        trace.append(("peel", pick))
        for w in adj[pick]:
            adj[w].discard(pick)
        adj[pick] = set()

    col: dict[Edge, int] = {}
    rest = Graph(G.n, tuple(norm_edge(u, w) for u in adj for w in adj[u] if u < w))
    for comp in rest.components():
        if len(comp) == 1:
            continue
        sub = rest.induced(comp)
        sub_lists = ListAssignment({(i, j): L[norm_edge(comp[i], comp[j])] for i, j in sub.edges}, 2)
        if sub.n == 5 and sub.e == 10:
            part = colour_k5_for_k3(sub_lists)
            trace.append(("K5", tuple(comp)))
        else:
            part = colouring_from_lists(sub, GraphFamily.of("K3"), sub_lists)
            trace.append(("exhaustive", tuple(comp)))
            log.info("sparse_triangle_free_colouring: exhaustive fallback on %s", comp)
            if part is None:
                raise FalsificationError(f"stuck component {comp} has no triangle-free colouring")
        for (i, j), c in part.colour_of.items():
            col[norm_edge(comp[i], comp[j])] = c
    for v, nbrs, out in reversed(steps):
        for u in nbrs:
            banned = {col[norm_edge(u, out[u])]} if u in out else set()
            col[norm_edge(u, v)] = _first_not(L[norm_edge(u, v)], banned)
    result = EdgeColouring(col)
    if not is_good_colouring(G, GraphFamily.of("K3"), result, L):
        raise FalsificationError("sparse_triangle_free_colouring produced a monochromatic triangle")
    return result
