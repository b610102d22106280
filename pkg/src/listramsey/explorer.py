"""Exploration of F-clusters one member copy at a time.

Starting from the smallest edge, each step adds a copy of a family member
that meets the current subgraph but is not inside it.  Regular copies (2-
density exactly t, meeting the current subgraph in exactly one edge and its
two endpoints) are preferred, rooted at the earliest-arrived edge; otherwise
the smallest degenerate copy is taken.  The functional (e - 1) - t(v - 2)
is unchanged by regular steps and grows by at least eta per degenerate one.
"""

from __future__ import annotations

import enum
import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .copies import copy_key, enumerate_copies_with_maps
from .density import _max_edges_by_size, family_two_density, is_strictly_two_balanced, max_two_density
from .errors import DomainError, FalsificationError
from .graph import Edge, Graph, GraphFamily, norm_edge
from .hypergraph import f_hypergraph, is_f_cluster

INF = math.inf


class StepKind(enum.Enum):
    REGULAR = "R"
    DEGENERATE = "D"


class StopReason(enum.Enum):
    GAMMA_DEGENERATE = "GAMMA_DEGENERATE"
    LOG_SIZE = "LOG_SIZE"
    COMPLETE = "COMPLETE"


@dataclass(frozen=True)
class StepRecord:
    kind: StepKind
    member: int
    embedding: tuple[int, ...]  # image of member vertex i
    root: Edge | None = None  # REGULAR only
    root_birth: int | None = None
    member_edge: Edge | None = None  # member edge (a, b) with a -> root[0], b -> root[1]
    overlap: tuple[Edge, ...] = ()  # host edges already present (DEGENERATE)
    new_vertices: tuple[int, ...] = ()
    new_edges: tuple[Edge, ...] = ()


@dataclass
class ExplorationTrace:
    e0: Edge
    steps: list[StepRecord] = field(default_factory=list)
    snapshots: list[tuple[int, int]] = field(default_factory=list)  # (e, v) of C_0, C_1, ...
    stop_reason: StopReason = StopReason.COMPLETE
    birth: dict[Edge, int] = field(default_factory=dict)
    n: int = 0

    @property
    def tau(self) -> int:
        return len(self.steps)

    @property
    def degenerate_count(self) -> int:
        return sum(1 for s in self.steps if s.kind is StepKind.DEGENERATE)

    def final_edges(self) -> list[Edge]:
        return sorted(self.birth)

    def final_graph(self) -> Graph:
        return Graph(self.n, tuple(self.final_edges()))


# -- constants -----------------------------------------------------------------


def _check_balanced(fam: GraphFamily) -> None:
    for name, F in zip(fam.names, fam.members):
        if F.n < 3 or not is_strictly_two_balanced(F)[0]:
            raise DomainError(f"member {name} is not strictly 2-balanced")


def eta_constant(fam: GraphFamily) -> tuple[Fraction | float, Fraction, Fraction]:
    """``(eta1, eta2, eta)``; eta1 is ``math.inf`` when no member has m2 > t.

    For eta2 only the densest F' on each vertex count matters: a proper
    subset S contributes e(F[S]) edges, and the spanning case contributes
    F minus one edge.
    """
    _check_balanced(fam)
    t = family_two_density(fam)
    eta1: Fraction | float = INF
    eta2: Fraction | None = None
    for F in fam:
        if max_two_density(F) > t:
            val = (F.e - 1) - t * (F.n - 2)
            eta1 = val if eta1 == INF else min(eta1, val)
        best = _max_edges_by_size(F)
        cands = []
        for k in range(3, F.n):
            if best[k] >= 2:
                cands.append((F.e - best[k]) - t * (F.n - k))
        if F.e - 1 >= 2:
            cands.append(Fraction(1))
        for c in cands:
            eta2 = Fraction(c) if eta2 is None else min(eta2, Fraction(c))
    if eta2 is None:
        raise DomainError("no member has a subgraph with two edges")
    eta = eta2 if eta1 == INF else min(eta1, eta2)
    if eta <= 0 or (eta1 != INF and eta1 <= 0):
        raise FalsificationError(f"non-positive eta: eta1={eta1}, eta2={eta2}")
    return eta1, eta2, Fraction(eta)


def gamma_constant(fam: GraphFamily) -> int:
    t = family_two_density(fam)
    eta = eta_constant(fam)[2]
    q = 2 * t / eta
    return -((-q.numerator) // q.denominator)


# -- exploration -------------------------------------------------------------------


def _all_copies(C: Graph, fam: GraphFamily) -> list[tuple[tuple, int, frozenset, dict[int, int]]]:
    """(order key, member, edge set, embedding) for every copy, smallest first."""
    out = []
    for i, F in enumerate(fam):
        for c, phi in enumerate_copies_with_maps(F, C).items():
            out.append(((copy_key(c), i), i, c, phi))
    out.sort(key=lambda x: x[0])
    return out


def explore_cluster(C: Graph, fam: GraphFamily, Gamma: int, log_bound: int) -> ExplorationTrace:
    if Gamma < 1:
        raise DomainError("Gamma must be at least 1")
    if C.e == 0 or not is_f_cluster(C, fam):
        raise DomainError("input is not an F-cluster")
    t = family_two_density(fam)
    at_t = [max_two_density(F) == t for F in fam]
    copies = _all_copies(C, fam)
    target = C.edge_set
    e0 = C.edges[0]
    birth = {e0: 0}
    verts = set(e0)
    trace = ExplorationTrace(e0, n=C.n, birth=birth)
    trace.snapshots.append((1, 2))
    degenerate = 0
    while True:
        if degenerate == Gamma:
            trace.stop_reason = StopReason.GAMMA_DEGENERATE
            break
        if len(verts) >= log_bound:
            trace.stop_reason = StopReason.LOG_SIZE
            break
        if len(birth) == len(target):
            trace.stop_reason = StopReason.COMPLETE
            break
        best_reg, best_deg = None, None
        for key, i, c, phi in copies:
            shared = [e for e in c if e in birth]
            if not shared or len(shared) == len(c):
                continue
            shared_v = {x for x in phi.values() if x in verts}
            if at_t[i] and len(shared) == 1 and len(shared_v) == 2:
                root = shared[0]
                rkey = (birth[root], root, key)
                if best_reg is None or rkey < best_reg[0]:
                    best_reg = (rkey, i, c, phi, root)
            elif best_deg is None:
                best_deg = (key, i, c, phi, shared)
        if best_reg is None and best_deg is None:
            raise FalsificationError("cluster is not exhausted but no copy overlaps the explored part")
        step_no = len(trace.steps) + 1
        if best_reg is not None:
            _, i, c, phi, root = best_reg
            inv = {x: a for a, x in phi.items()}
            member_edge = (inv[root[0]], inv[root[1]])
            new_v = tuple(phi[a] for a in sorted(phi) if phi[a] not in verts)
            new_e = tuple(sorted(e for e in c if e not in birth))
            rec = StepRecord(StepKind.REGULAR, i, tuple(phi[a] for a in range(fam[i].n)), root=root,
                             root_birth=birth[root], member_edge=member_edge, new_vertices=new_v, new_edges=new_e)
        else:
            _, i, c, phi, shared = best_deg
            new_v = tuple(phi[a] for a in sorted(phi) if phi[a] not in verts)
            new_e = tuple(sorted(e for e in c if e not in birth))
            rec = StepRecord(StepKind.DEGENERATE, i, tuple(phi[a] for a in range(fam[i].n)),
                             overlap=tuple(sorted(shared)), new_vertices=new_v, new_edges=new_e)
            degenerate += 1
        for e in rec.new_edges:
            birth[e] = step_no
        verts.update(rec.new_vertices)
        trace.steps.append(rec)
        trace.snapshots.append((len(birth), len(verts)))
    return trace


def verify_balance(trace: ExplorationTrace, t: Fraction, eta: Fraction) -> bool:
    """Check (e - 1) - t(v - 2) >= eta * d at every index, and that regular
    steps keep the left side fixed while degenerate ones raise it by eta."""
    snaps = trace.snapshots
    if len(snaps) != trace.tau + 1 or snaps[0] != (1, 2):
        raise DomainError("malformed trace: snapshot count or base case")
    t, eta = Fraction(t), Fraction(eta)
    phi = [(e - 1) - t * (v - 2) for e, v in snaps]
    d = 0
    if phi[0] != 0:
        return False
    for i, step in enumerate(trace.steps, start=1):
        delta = phi[i] - phi[i - 1]
        if step.kind is StepKind.REGULAR:
            if delta != 0:
                return False
        else:
            d += 1
            if delta < eta:
                return False
        if phi[i] < eta * d:
            return False
    return True


# -- encoding --------------------------------------------------------------------------


def _fmt_edge(e: Edge) -> str:
    return f"{e[0]}-{e[1]}"


def _parse_edge(s: str) -> Edge:
    a, b = s.split("-")
    return int(a), int(b)


def encode_trace(trace: ExplorationTrace) -> list[str]:
    """One line per step after a header naming the starting edge.

    ``R member root_birth u-v a-b v1,v2,...``: member edge a-b lands on the
    root with a -> u, b -> v, and the remaining member vertices, in
    increasing order, land on v1, v2, ....
    ``D member a:x,b:y,...; v1,v2,...``: member vertices already in the
    explored part with their images, then the images of the others in
    increasing order.
    """
    lines = [f"S {_fmt_edge(trace.e0)}"]
    last_birth = -1
    seen = set(trace.e0)
    for step in trace.steps:
        emb = step.embedding
        if step.kind is StepKind.REGULAR:
            if step.root_birth < last_birth:
                raise FalsificationError(
                    f"root birth times decrease: {step.root_birth} after {last_birth}")
            last_birth = step.root_birth
            a, b = step.member_edge
            u, v = emb[a], emb[b]
            rest = [emb[x] for x in range(len(emb)) if x not in (a, b)]
            lines.append(f"R {step.member} {step.root_birth} {_fmt_edge((u, v))} {a}-{b} "
                         + ",".join(map(str, rest)))
        else:
            old = [f"{x}:{emb[x]}" for x in range(len(emb)) if emb[x] in seen]
            new = [str(emb[x]) for x in range(len(emb)) if emb[x] not in seen]
            lines.append(f"D {step.member} {','.join(old)}; {','.join(new)}")
        seen.update(emb)
    return lines


def decode_trace(tokens: Sequence[str], fam: GraphFamily, n: int) -> Graph:
    """Rebuild the explored subgraph from :func:`encode_trace` output."""
    lines = [ln.strip() for ln in tokens if ln.strip()]
    if not lines or not lines[0].startswith("S "):
        raise DomainError("trace must start with an S line")
    edges = {norm_edge(*_parse_edge(lines[0].split()[1]))}
    births = {next(iter(edges)): 0}
    for step_no, ln in enumerate(lines[1:], start=1):
        kind, rest = ln[0], ln[2:]
        if kind == "R":
            member, birth, root, medge, *tail = rest.split()
            F = fam[int(member)]
            u, v = _parse_edge(root)
            a, b = _parse_edge(medge)
            if births.get(norm_edge(u, v)) != int(birth):
                raise DomainError(f"root {root} does not have birth time {birth}")
            imgs = [int(x) for x in tail[0].split(",")] if tail and tail[0] else []
            others = [x for x in range(F.n) if x not in (a, b)]
            if len(imgs) != len(others):
                raise DomainError(f"wrong vertex count in line {ln!r}")
            emb = {a: u, b: v, **dict(zip(others, imgs))}
        elif kind == "D":
            member, rest2 = rest.split(" ", 1)
            F = fam[int(member)]
            old_s, new_s = (s.strip() for s in rest2.split(";"))
            emb = {}
            for tok in filter(None, old_s.split(",")):
                x, y = tok.split(":")
                emb[int(x)] = int(y)
            free = [x for x in range(F.n) if x not in emb]
            imgs = [int(x) for x in filter(None, new_s.split(","))]
            if len(imgs) != len(free):
                raise DomainError(f"wrong vertex count in line {ln!r}")
            emb.update(zip(free, imgs))
        else:
            raise DomainError(f"unknown step kind in {ln!r}")
        for x, y in F.edges:
            e = norm_edge(emb[x], emb[y])
            if e not in births:
                births[e] = step_no
            edges.add(e)
    if any(max(e) >= n for e in edges):
        raise DomainError("decoded vertex outside 0..n-1")
    return Graph(n, tuple(edges))


def dump_trace(trace: ExplorationTrace) -> str:
    return "\n".join(encode_trace(trace)) + "\n"


# -- clusters in a host ------------------------------------------------------------------


def find_clusters(G: Graph, fam: GraphFamily) -> list[Graph]:
    """Components of the F-hypergraph, each as a subgraph of G on G's
    labels; edges in no copy belong to no cluster."""
    H = f_hypergraph(G, fam)
    out = []
    for ids in H.edge_components():
        es = set().union(*(H.edges[i] for i in ids))
        out.append(Graph(G.n, tuple(G.edges[j] for j in es)))
    out.sort(key=lambda g: g.edges)
    return out


def cluster_density(C: Graph) -> Fraction:
    return Fraction(C.e, len(C.support()))


def scan_bad_clusters(G: Graph, fam: GraphFamily, t: Fraction) -> list[tuple[Graph, Fraction]]:
    t = Fraction(t)
    out = []
    for C in find_clusters(G, fam):
        d = cluster_density(C)
        if d > t:
            out.append((C, d))
    return out


def grow_random_cluster(fam: GraphFamily, steps: int, rng: random.Random, max_shared: int | None = None) -> Graph:
    """Random F-cluster: a member copy, then ``steps`` more copies glued on.

    Each new copy identifies a random set of at least two of its vertices
    with existing vertices so that at least one of its edges lands on an
    existing edge; this keeps the F-hypergraph connected.
    """
    F = fam[rng.randrange(len(fam))]
    edges = set(F.edges)
    nv = F.n
    for _ in range(steps):
        F = fam[rng.randrange(len(fam))]
        cur = sorted(edges)
        hi = F.n - 1 if max_shared is None else min(F.n - 1, max_shared)
        k = rng.randint(2, max(2, hi))
        # anchor one member edge onto an existing edge, then k - 2 more identifications
        a, b = F.edges[rng.randrange(F.e)]
        u, v = cur[rng.randrange(len(cur))]
        if rng.random() < 0.5:
            u, v = v, u
        emb = {a: u, b: v}
        others = [x for x in range(F.n) if x not in emb]
        rng.shuffle(others)
        pool = [x for x in range(nv) if x not in (u, v)]
        rng.shuffle(pool)
        for x, y in zip(others[: k - 2], pool):
            emb[x] = y
        nxt = nv
        for x in range(F.n):
            if x not in emb:
                emb[x] = nxt
                nxt += 1
        nv = nxt
        edges.update(norm_edge(emb[x], emb[y]) for x, y in F.edges)
    return Graph(nv, tuple(edges))
