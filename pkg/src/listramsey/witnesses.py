"""Sparse Ramsey and list-Ramsey hosts for families of forests and odd cycles.

The gadgets are F(b, l), an odd cycle with a (2b-1)-ray star hung at every
cycle vertex, and T(b, s), a two-layer tree.  Hosts built here all have at
most one cycle per component.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .classify import (
    broom_hairs_needed,
    classify,
    is_star,
    nonstar_components,
    smallest_odd_cycle_containing,
    star_components,
)
from .colourings import _nonrepetitive_component, find_cycle
from .copies import contains
from .density import max_density
from .errors import DomainError
from .graph import Edge, Graph, GraphFamily, cycle, disjoint_union, star
from .hypergraph import Hypergraph, aux_hypergraph, is_proper_two_colouring, odd_cycles_containing, proper_two_colouring
from .oracle import EdgeColouring, ListAssignment


@dataclass(frozen=True)
class BroomSpec:
    hairs: int

    def __post_init__(self):
        if self.hairs < 0:
            raise DomainError("a broom has a non-negative number of hairs")

    @property
    def v(self) -> int:
        return 3 + self.hairs

    @property
    def e(self) -> int:
        return 2 + self.hairs


@dataclass
class WitnessPackage:
    host: Graph
    lists: ListAssignment | None
    target_family: GraphFamily
    construction_log: dict = field(default_factory=dict)


def build_broom_cycle_gadget(b: int, ell: int) -> Graph:
    """Cycle 0..ell-1, then 2b-1 leaves on each cycle vertex in turn."""
    if b < 1:
        raise DomainError("need b >= 1")
    if ell < 3 or ell % 2 == 0:
        raise DomainError("the cycle length must be odd and at least 3")
    edges = [(i, (i + 1) % ell) for i in range(ell)]
    nxt = ell
    for i in range(ell):
        for _ in range(2 * b - 1):
            edges.append((i, nxt))
            nxt += 1
    return Graph(nxt, tuple(edges))


def build_broom_star_tree(b: int, s: int) -> Graph:
    """Root 0 of degree 2*max(b+1, s) - 1; each child has s children."""
    if b < 1 or s < 1:
        raise DomainError("need b >= 1 and s >= 1")
    d = 2 * max(b + 1, s) - 1
    edges = [(0, i) for i in range(1, d + 1)]
    nxt = d + 1
    for child in range(1, d + 1):
        for _ in range(s):
            edges.append((child, nxt))
            nxt += 1
    return Graph(nxt, tuple(edges))


def _hairs(X: Graph) -> int:
    # gadgets need b >= 1; a bigger broom still contains every component of X
    return max(1, broom_hairs_needed(X))


def _pick_members(fam: GraphFamily) -> tuple[int, int]:
    """Index of the first B-graph X and of the first C*-graph Y other than X
    (Y = X if X is the only C*-graph)."""
    classes = [classify(F) for F in fam]
    xs = [i for i, c in enumerate(classes) if c.is_b_graph]
    ys = [i for i, c in enumerate(classes) if c.is_cstar_graph]
    if not xs or not ys:
        raise DomainError("the family needs both a B-graph and a C*-graph")
    x = xs[0]
    y = next((j for j in ys if j != x), x)
    return x, y


def build_list_ramsey_witness(fam: GraphFamily) -> WitnessPackage:
    """2-list-Ramsey host with m <= 1 for a family with a B-graph X and a
    C*-graph Y.

    Y has star components S^1..S^k and non-star components inside odd
    cycles C^1..C^m.  A is the disjoint union of T(b, S^j) and F(b, C^j);
    G' holds one copy of A per colour pair from a palette of k+m+1 colours,
    with that pair as every list; the host is (t-1)(k+m+1)+1 copies of G',
    where t counts the components of X.
    """
    xi, yi = _pick_members(fam)
    X, Y = fam[xi], fam[yi]
    b = _hairs(X)
    stars = star_components(Y)
    others = nonstar_components(Y)
    k, m = len(stars), len(others)
    cycles = [smallest_odd_cycle_containing(c) for c in others]
    parts = [build_broom_star_tree(b, s.e) for s in stars] + [build_broom_cycle_gadget(b, l) for l in cycles]
    A = disjoint_union(*parts)
    palette = k + m + 1
    pairs = list(combinations(range(palette), 2))
    t = len(X.edge_components())
    copies = (t - 1) * palette + 1
    blocks, lists = [], {}
    off = 0
    for _ in range(copies):
        for pair in pairs:
            for u, v in A.edges:
                lists[(u + off, v + off)] = pair
            blocks.append(A)
            off += A.n
    host = disjoint_union(*blocks)
    L = ListAssignment(lists, 2)
    if max_density(host) > 1:
        raise DomainError("witness host has a component with two cycles")
    log = {
        "X": fam.names[xi], "Y": fam.names[yi], "b": b, "k": k, "m": m, "t": t,
        "palette": palette, "copies_of_A": len(pairs), "copies_of_Gprime": copies,
        "stars": [s.e for s in stars], "cycles": cycles,
    }
    return WitnessPackage(host, L, fam, log)


def _member_aux_edges(F: Graph, cap: int) -> set[frozenset[int]]:
    from itertools import product

    lengths = list(range(3, cap + 1, 2))
    pos = {l: i for i, l in enumerate(lengths)}
    comps = nonstar_components(F)
    if not comps:
        return set()
    choices = [odd_cycles_containing(c, cap) for c in comps]
    return {frozenset(pos[l] for l in pick) for pick in product(*choices)}


def minimal_non_colourable(H: Hypergraph) -> list[int] | None:
    """Hyperedge ids of a non-2-colourable subhypergraph from which no
    single hyperedge can be dropped, found by trying to drop hyperedges from
    the last one backwards.  None if H itself is 2-colourable."""
    if proper_two_colouring(H) is not None:
        return None
    keep = list(range(H.num_edges))
    for i in reversed(range(H.num_edges)):
        trial = [j for j in keep if j != i]
        if proper_two_colouring(H.sub(trial)) is None:
            keep = trial
    return keep


def r_of(members: list[Graph], A: Graph) -> int:
    """Max over members of the number of components that embed in A."""
    return max((sum(1 for c in F.edge_components() if contains(c, A)) for F in members), default=0)


def build_plain_ramsey_witness(fam: GraphFamily, cap: int = 9) -> WitnessPackage | None:
    """2-Ramsey host with m <= 1, or None when none was found below the cap.

    With a star-forest member (m stars, at most s rays each) the host is
    2m-1 copies of a star with 2s-1 rays.  Otherwise a non-2-colourable
    part A' of the odd-cycle hypergraph (truncated at ``cap``) is needed;
    then G' is the union of F(b, C) over the cycles of A' and the host is
    2(r-1)e(A') + 2x - 2 copies of G' plus r(S) + 2x - 2 copies of T(b, S).
    Counts are raised to at least one, and T is left out when the
    contributing members have no star components.
    """
    xi, _ = _pick_members(fam)
    X = fam[xi]
    forests = [(i, F) for i, F in enumerate(fam) if classify(F).is_star_forest]
    if forests:
        i, F = forests[0]
        m = len(F.edge_components())
        s = max(c.e for c in F.edge_components())
        host = disjoint_union(*[star(2 * s - 1)] * (2 * m - 1))
        return WitnessPackage(host, None, fam, {"kind": "star-forest", "member": fam.names[i], "m": m, "s": s,
                                                "copies": 2 * m - 1, "rays": 2 * s - 1})
    A = aux_hypergraph(fam, cap)
    keep = minimal_non_colourable(A)
    if keep is None:
        return None
    Ap = A.sub(keep)
    cyc_ids = sorted(set().union(*Ap.edges))
    lengths = [3 + 2 * c for c in cyc_ids]
    b = _hairs(X)
    Gp = disjoint_union(*(build_broom_cycle_gadget(b, l) for l in lengths))
    ap_edges = set(Ap.edges)
    contributing = [F for F in fam if classify(F).is_cstar_graph and _member_aux_edges(F, cap) & ap_edges]
    star_rays = [c.e for F in contributing for c in F.edge_components() if is_star(c)]
    r = max(r_of(contributing, cycle(l)) for l in lengths)
    x = len(X.edge_components())
    eA = Ap.num_edges
    n_gp_formula = 2 * (r - 1) * eA + 2 * x - 2
    n_gp = max(1, n_gp_formula)
    parts = [Gp] * n_gp
    log = {"kind": "aux", "cap": cap, "Aprime": [tuple(f"C{3 + 2 * v}" for v in sorted(e)) for e in Ap.edges],
           "b": b, "r": r, "x": x, "eAprime": eA, "copies_of_Gprime_formula": n_gp_formula, "copies_of_Gprime": n_gp}
    if star_rays:
        S = star(max(star_rays))
        rS = r_of(contributing, S)
        n_t_formula = rS + 2 * x - 2
        n_t = max(1, n_t_formula)
        parts += [build_broom_star_tree(b, S.e)] * n_t
        log.update({"s": S.e, "rS": rS, "copies_of_T_formula": n_t_formula, "copies_of_T": n_t})
    else:
        log.update({"s": None, "rS": 0, "copies_of_T": 0})
    host = disjoint_union(*parts)
    if max_density(host) > 1:
        raise DomainError("witness host has a component with two cycles")
    return WitnessPackage(host, None, fam, log)


def aux_guided_colouring(G: Graph, fam: GraphFamily, phi: dict[str, int]) -> EdgeColouring:
    """Red/blue (0/1) colouring with no monochromatic member, given a proper
    2-colouring ``phi`` of the odd-cycle hypergraph keyed by "C3", "C5", ...

    A component with an odd cycle C gets phi(C) on the cycle and alternates
    outwards starting with the other colour; other components get a
    nonrepetitive colouring.
    """
    if max_density(G) > 1:
        raise DomainError("the host must have at most one cycle per component")
    if any(classify(F).is_star_forest for F in fam):
        raise DomainError("the family contains a star forest")
    comps = [c for c in G.components() if len(c) > 1]
    odd = {}
    for comp in comps:
        cyc = find_cycle(G, comp)
        if cyc is not None and len(cyc) % 2 == 1:
            odd[tuple(comp)] = cyc
    named = []
    for key in phi:
        if not (key.startswith("C") and key[1:].isdigit() and int(key[1:]) % 2 == 1 and int(key[1:]) >= 3):
            raise DomainError(f"phi key {key!r} is not an odd cycle name such as C5")
        named.append(int(key[1:]))
    cap = max([3] + named + [len(c) for c in odd.values()])
    if any(classify(F).is_cstar_graph for F in fam):
        A = aux_hypergraph(fam, cap)
        missing = [v for v in A.vertices if v not in phi]
        if missing:
            raise DomainError(f"phi does not colour {missing}")
        if any(phi[v] not in (0, 1) for v in A.vertices):
            raise DomainError("phi must use colours 0 and 1")
        if not is_proper_two_colouring(A, {i: phi[v] for i, v in enumerate(A.vertices)}):
            raise DomainError("phi leaves a hyperedge monochromatic")
    for cyc in odd.values():
        if f"C{len(cyc)}" not in phi:
            raise DomainError(f"phi does not colour C{len(cyc)}")
    L = ListAssignment.identical(G, (0, 1))
    col: dict[Edge, int] = {}
    for comp in comps:
        cyc = odd.get(tuple(comp))
        ring = None if cyc is None else [phi[f"C{len(cyc)}"]] * len(cyc)
        col.update(_nonrepetitive_component(G, comp, L, ring))
    return EdgeColouring(col)
