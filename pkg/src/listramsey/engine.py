"""Backtracking search for list colourings of hypergraphs.

Variables are hypergraph vertices with colour domains given as bitmasks.  A
constraint ``(vertices, forbidden)`` is violated when all its vertices get
the same colour and that colour is in ``forbidden``.  Plain Ramsey questions
forbid every colour; asymmetric ones forbid a single colour per copy.

Before searching, constraints that can be peeled (some vertex with a spare
colour is met by no other constraint in exactly that vertex) are set aside
and repaired afterwards by recolouring that vertex, and what remains is
split into independent components.
"""

from __future__ import annotations

import enum
import sys
from dataclasses import dataclass, field
from typing import Sequence

from .errors import FalsificationError

NONE_LEFT = -2
MIXED = -1


class Outcome(enum.Enum):
    FOUND = "FOUND"
    NONE = "NONE"
    UNDECIDED = "UNDECIDED"


@dataclass
class SolveResult:
    outcome: Outcome
    assignment: list[int] | None = None
    nodes: int = 0
    reason: str = ""
    stats: dict = field(default_factory=dict)


class _OutOfBudget(Exception):
    pass


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _single(mask: int) -> bool:
    return mask != 0 and mask & (mask - 1) == 0


def peel_constraints(nv: int, domains: Sequence[int], cons: list[tuple[tuple[int, ...], int]]):
    """Worklist peeling.  Returns ``(alive flags, [(constraint, witness vertex)] in removal order)``."""
    inc: list[list[int]] = [[] for _ in range(nv)]
    sets = [frozenset(vs) for vs, _ in cons]
    for i, (vs, _) in enumerate(cons):
        for v in vs:
            inc[v].append(i)
    alive = [True] * len(cons)

    def witness(i):
        e = sets[i]
        for v in cons[i][0]:
            if _single(domains[v]) or domains[v] == 0:
                continue
            if not any(j != i and alive[j] and len(sets[j] & e) == 1 for j in inc[v]):
                return v
        return None

    removed = []
    stack = list(range(len(cons) - 1, -1, -1))
    queued = [True] * len(cons)
    while stack:
        i = stack.pop()
        queued[i] = False
        if not alive[i]:
            continue
        v = witness(i)
        if v is None:
            continue
        alive[i] = False
        removed.append((i, v))
        for u in cons[i][0]:
            for j in inc[u]:
                if alive[j] and not queued[j]:
                    queued[j] = True
                    stack.append(j)
    return alive, removed


def _components(nv: int, cons: list[tuple[tuple[int, ...], int]], ids: list[int]) -> list[list[int]]:
    parent = list(range(nv))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i in ids:
        vs = cons[i][0]
        a = find(vs[0])
        for v in vs[1:]:
            b = find(v)
            if a != b:
                parent[b] = a
    groups: dict[int, list[int]] = {}
    for i in ids:
        groups.setdefault(find(cons[i][0][0]), []).append(i)
    return list(groups.values())


class _Search:
    """Backtracking with forward checking on one component."""

    def __init__(self, nv, domains, cons, order, budget, symmetric, palette, dynamic=True):
        self.col = [-1] * nv
        self.dom = list(domains)
        self.cons = cons
        self.size = [len(vs) for vs, _ in cons]
        self.mask = [m for _, m in cons]
        self.cnt = [0] * len(cons)
        self.hcol = [NONE_LEFT] * len(cons)
        self.inc: list[list[int]] = [[] for _ in range(nv)]
        for i, (vs, _) in enumerate(cons):
            for v in vs:
                self.inc[v].append(i)
        self.order = order
        self.budget = budget
        self.nodes = 0
        self.symmetric = symmetric
        self.palette = palette
        self.used = {}
        self.trail: list[tuple] = []
        self.dynamic = dynamic
        self.weight = [1] * len(cons)
        self.culprit = -1

    def assign(self, v0: int, c0: int) -> bool:
        col, dom, cnt, hcol, size, mask, cons, trail = (
            self.col, self.dom, self.cnt, self.hcol, self.size, self.mask, self.cons, self.trail)
        queue = [(v0, c0)]
        while queue:
            v, c = queue.pop()
            if col[v] != -1:
                if col[v] != c:
                    return False
                continue
            if not dom[v] >> c & 1:
                return False
            col[v] = c
            self.used[c] = self.used.get(c, 0) + 1
            trail.append((0, v, c))
            for h in self.inc[v]:
                hc = hcol[h]
                trail.append((1, h, cnt[h], hc))
                cnt[h] += 1
                if hc == NONE_LEFT:
                    hc = c
                elif hc != c:
                    hc = MIXED
                hcol[h] = hc
                if hc >= 0 and mask[h] >> c & 1:
                    left = size[h] - cnt[h]
                    if left == 0:
                        self.culprit = h
                        return False
                    if left == 1:
                        for w in cons[h][0]:
                            if col[w] == -1:
                                break
                        nd = dom[w] & ~(1 << c)
                        if nd != dom[w]:
                            trail.append((2, w, dom[w]))
                            dom[w] = nd
                            if nd == 0:
                                self.culprit = h
                                return False
                            if nd & (nd - 1) == 0:
                                queue.append((w, nd.bit_length() - 1))
        return True

    def undo(self, mark: int) -> None:
        trail = self.trail
        while len(trail) > mark:
            op = trail.pop()
            if op[0] == 0:
                self.col[op[1]] = -1
                self.used[op[2]] -= 1
            elif op[0] == 1:
                self.cnt[op[1]] = op[2]
                self.hcol[op[1]] = op[3]
            else:
                self.dom[op[1]] = op[2]

    def run(self) -> bool:
        for v in self.order:
            d = self.dom[v]
            if d == 0:
                return False
            if _single(d) and not self.assign(v, d.bit_length() - 1):
                return False
        return self._dfs(0)

    def _choices(self, v: int) -> list[int]:
        cs = _bits(self.dom[v])
        if self.symmetric:
            fresh = [c for c in self.palette if not self.used.get(c)]
            if fresh:
                keep = fresh[0]
                cs = [c for c in cs if self.used.get(c) or c == keep]
        return cs

    def _pick(self, i: int) -> tuple[int, int]:
        order, col = self.order, self.col
        while i < len(order) and col[order[i]] != -1:
            i += 1
        if i == len(order) or not self.dynamic:
            return i, (order[i] if i < len(order) else -1)
        # domain over weighted degree: weights grow on constraints that fail
        hcol, weight, dom = self.hcol, self.weight, self.dom
        best, best_key = -1, None
        for k in range(i, len(order)):
            v = order[k]
            if col[v] != -1:
                continue
            w = 0
            for h in self.inc[v]:
                if hcol[h] != MIXED:
                    w += weight[h]
            key = w / bin(dom[v]).count("1")
            if best_key is None or key > best_key:
                best, best_key = v, key
        return i, best

    def _dfs(self, i: int) -> bool:
        i, v = self._pick(i)
        if v == -1:
            return True
        for c in self._choices(v):
            self.nodes += 1
            if self.budget is not None and self.nodes > self.budget:
                raise _OutOfBudget
            mark = len(self.trail)
            self.culprit = -1
            if self.assign(v, c):
                if self._dfs(i):
                    return True
            elif self.culprit >= 0:
                self.weight[self.culprit] += 1
            self.undo(mark)
        return False


def default_order(nv: int, cons: list[tuple[tuple[int, ...], int]]) -> list[int]:
    """Greedy order that tries to complete constraints early: repeatedly take
    the vertex lying in the constraint with the fewest unordered vertices."""
    inc: list[list[int]] = [[] for _ in range(nv)]
    for i, (vs, _) in enumerate(cons):
        for v in vs:
            inc[v].append(i)
    left = [len(vs) for vs, _ in cons]
    placed = [False] * nv
    order = []
    for _ in range(nv):
        best, key = -1, None
        for v in range(nv):
            if placed[v]:
                continue
            k = (min((left[h] for h in inc[v]), default=10**9), -len(inc[v]), v)
            if key is None or k < key:
                best, key = v, k
        placed[best] = True
        order.append(best)
        for h in inc[best]:
            left[h] -= 1
    return order


def solve_list_hypergraph(
    domains: Sequence[int],
    constraints: Sequence[tuple[Sequence[int], int]],
    budget: int | None = None,
    symmetric_palette: bool = False,
    order: Sequence[int] | None = None,
    reduce: bool = True,
    component_cap: int | None = None,
) -> SolveResult:
    """Find a colouring ``assignment[v] in domains[v]`` violating no constraint.

    ``symmetric_palette`` enables first-use colour symmetry breaking and is
    only sound when every domain is the same set and every constraint forbids
    every colour.  ``component_cap`` bounds the number of variables in any
    component left after peeling; larger ones give UNDECIDED.
    """
    nv = len(domains)
    dom = list(domains)
    cons = [(tuple(sorted(set(vs))), m) for vs, m in constraints]
    if order is None:
        order = default_order(nv, cons)
    # constraints that can never be violated, and single-vertex ones
    changed = True
    while changed:
        changed = False
        kept = []
        for vs, m in cons:
            live = m
            for v in vs:
                live &= dom[v]
            if live == 0:
                continue
            if len(vs) == 1:
                dom[vs[0]] &= ~live
                changed = True
                continue
            kept.append((vs, live))
        cons = kept
    if any(d == 0 for d in dom):
        return SolveResult(Outcome.NONE, reason="empty list")

    if reduce:
        alive, removed = peel_constraints(nv, dom, cons)
    else:
        alive, removed = [True] * len(cons), []
    live_ids = [i for i in range(len(cons)) if alive[i]]
    comps = _components(nv, cons, live_ids)
    pos = {v: k for k, v in enumerate(order)}
    colour = [_bits(d)[0] for d in dom]
    nodes = 0
    palette = sorted(set().union(*(_bits(d) for d in dom))) if dom else []
    sizes = []
    old_limit = sys.getrecursionlimit()
    sys.setrecursionlimit(max(old_limit, 10 * nv + 1000))
    try:
        for comp in sorted(comps, key=len):
            verts = sorted({v for i in comp for v in cons[i][0]}, key=lambda v: pos[v])
            sizes.append(len(verts))
            if component_cap is not None and len(verts) > component_cap:
                return SolveResult(Outcome.UNDECIDED, nodes=nodes, reason=f"component of {len(verts)} variables exceeds cap {component_cap}",
                                   stats={"component_sizes": sizes})
            local = {v: k for k, v in enumerate(verts)}
            sub_cons = [(tuple(local[v] for v in cons[i][0]), cons[i][1]) for i in comp]
            s = _Search(len(verts), [dom[v] for v in verts], sub_cons, list(range(len(verts))),
                        None if budget is None else budget - nodes, symmetric_palette, palette)
            try:
                ok = s.run()
            except _OutOfBudget:
                return SolveResult(Outcome.UNDECIDED, nodes=nodes + s.nodes, reason=f"node budget {budget} exhausted",
                                   stats={"component_sizes": sizes})
            nodes += s.nodes
            if not ok:
                return SolveResult(Outcome.NONE, nodes=nodes, stats={"component_sizes": sizes, "peeled": len(removed)})
            for v in verts:
                colour[v] = s.col[local[v]]
    finally:
        sys.setrecursionlimit(old_limit)

    # put peeled constraints back, last removed first
    for i, v in reversed(removed):
        vs, m = cons[i]
        c = colour[vs[0]]
        if m >> c & 1 and all(colour[u] == c for u in vs):
            colour[v] = _bits(dom[v] & ~(1 << c))[0]
    for vs, m in cons:
        c = colour[vs[0]]
        if m >> c & 1 and all(colour[u] == c for u in vs):
            raise FalsificationError(f"repaired colouring violates constraint {vs}")
    return SolveResult(Outcome.FOUND, colour, nodes, stats={"component_sizes": sizes, "peeled": len(removed)})
