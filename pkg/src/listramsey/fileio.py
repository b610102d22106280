"""Text and JSON formats for graphs, families, lists, colourings,
hypergraphs and witness packages."""

from __future__ import annotations

import hashlib
import json
import re
from fractions import Fraction
from pathlib import Path

from .errors import DomainError
from .graph import Graph, GraphFamily, named_graph
from .hypergraph import Hypergraph
from .oracle import EdgeColouring, ListAssignment


# -- graphs -------------------------------------------------------------------


def graph_to_text(G: Graph) -> str:
    """``n m`` then one ``u v`` line per edge in canonical order."""
    lines = [f"{G.n} {G.e}"] + [f"{u} {v}" for u, v in G.edges]
    return "\n".join(lines) + "\n"


def graph_from_text(text: str) -> Graph:
    rows = [ln.split() for ln in text.splitlines() if ln.strip() and not ln.lstrip().startswith("#")]
    if not rows or len(rows[0]) != 2:
        raise DomainError("graph file must start with 'n m'")
    n, m = int(rows[0][0]), int(rows[0][1])
    body = rows[1:]
    if len(body) != m:
        raise DomainError(f"header promises {m} edges, file has {len(body)}")
    edges = []
    for row in body:
        if len(row) != 2:
            raise DomainError(f"bad edge line {' '.join(row)!r}")
        edges.append((int(row[0]), int(row[1])))
    return Graph(n, tuple(edges))


def read_graph(path: str | Path) -> Graph:
    """A graph file, or a name such as ``K4`` / ``C5`` / ``petersen``."""
    p = Path(path)
    if p.exists():
        return graph_from_text(p.read_text())
    try:
        return named_graph(str(path))
    except DomainError:
        raise DomainError(f"{path}: no such file and not a graph name") from None


def write_graph(G: Graph, path: str | Path) -> None:
    Path(path).write_text(graph_to_text(G))


# -- families -----------------------------------------------------------------


def family_to_json(fam: GraphFamily) -> str:
    doc = {"graphs": [{"name": name, "n": F.n, "edges": [list(e) for e in F.edges]}
                      for name, F in zip(fam.names, fam.members)]}
    return json.dumps(doc, indent=1) + "\n"


def family_from_json(text: str) -> GraphFamily:
    doc = json.loads(text)
    if not isinstance(doc, dict) or "graphs" not in doc:
        raise DomainError("family JSON needs a 'graphs' array")
    members, names = [], []
    for g in doc["graphs"]:
        members.append(Graph(int(g["n"]), tuple(tuple(e) for e in g["edges"])))
        names.append(str(g.get("name", f"F{len(names)}")))
    return GraphFamily(tuple(members), tuple(names))


def read_family(spec: str | Path) -> GraphFamily:
    """A family JSON file, or comma-separated graph names (``K3,K4``); a
    comma followed by a digit stays inside the name, as in ``K3,3``."""
    p = Path(spec)
    if p.exists():
        return family_from_json(p.read_text())
    return GraphFamily.of(*[s.strip() for s in re.split(r",(?!\d)", str(spec)) if s.strip()])


# -- lists and colourings ---------------------------------------------------------------


def lists_to_json(G: Graph, L: ListAssignment) -> str:
    doc = {"r": L.r, "lists": [[i, list(L[e])] for i, e in enumerate(G.edges)]}
    return json.dumps(doc) + "\n"


def lists_from_json(G: Graph, text: str) -> ListAssignment:
    doc = json.loads(text)
    r = int(doc["r"])
    got = {}
    for i, lst in doc["lists"]:
        if not 0 <= i < G.e:
            raise DomainError(f"edge index {i} out of range")
        got[G.edges[i]] = tuple(lst)
    if len(got) != G.e:
        raise DomainError("list file must give one list per edge")
    return ListAssignment(got, r)


def colouring_to_json(G: Graph, col: EdgeColouring) -> str:
    return json.dumps({"colours": [[i, col[e]] for i, e in enumerate(G.edges)]}) + "\n"


def colouring_from_json(G: Graph, text: str) -> EdgeColouring:
    doc = json.loads(text)
    got = {}
    for i, c in doc["colours"]:
        got[G.edges[i]] = int(c)
    if len(got) != G.e:
        raise DomainError("colouring file must colour every edge")
    return EdgeColouring(got)


# -- hypergraphs and witnesses -------------------------------------------------------------


def hypergraph_dump(H: Hypergraph) -> str:
    """``V E``, then per hyperedge a ``# provenance`` line and ``k v1 ... vk``."""
    lines = [f"{H.num_vertices} {H.num_edges}"]
    for e, tag in zip(H.edges, H.provenance):
        lines.append(f"# {tag}")
        vs = sorted(e)
        lines.append(" ".join(map(str, [len(vs), *vs])))
    return "\n".join(lines) + "\n"


def hypergraph_from_dump(text: str, vertices=None) -> Hypergraph:
    rows = [ln.strip() for ln in text.splitlines() if ln.strip()]
    nv, ne = map(int, rows[0].split())
    edges, tags, tag = [], [], None
    for ln in rows[1:]:
        if ln.startswith("#"):
            tag = ln[1:].strip()
            continue
        k, *vs = map(int, ln.split())
        if k != len(vs):
            raise DomainError(f"hyperedge line {ln!r} has the wrong length")
        edges.append(frozenset(vs))
        tags.append(tag or f"e{len(tags)}")
        tag = None
    if len(edges) != ne:
        raise DomainError(f"header promises {ne} hyperedges, file has {len(edges)}")
    return Hypergraph(tuple(vertices) if vertices is not None else tuple(range(nv)), tuple(edges), tuple(tags))


def _jsonable(x):
    if isinstance(x, Fraction):
        return str(x)
    if isinstance(x, (list, tuple)):
        return [_jsonable(y) for y in x]
    if isinstance(x, dict):
        return {str(k): _jsonable(v) for k, v in x.items()}
    return x


def write_witness(pkg, outdir: str | Path) -> list[Path]:
    """``host.graph``, ``lists.json`` (list witnesses only), ``family.json``
    and ``log.json`` in ``outdir``."""
    out = Path(outdir)
    out.mkdir(parents=True, exist_ok=True)
    written = [out / "host.graph", out / "family.json", out / "log.json"]
    write_graph(pkg.host, written[0])
    written[1].write_text(family_to_json(pkg.target_family))
    written[2].write_text(json.dumps(_jsonable(pkg.construction_log), indent=1, sort_keys=True) + "\n")
    if pkg.lists is not None:
        p = out / "lists.json"
        p.write_text(lists_to_json(pkg.host, pkg.lists))
        written.append(p)
    return written


def read_witness(outdir: str | Path):
    from .witnesses import WitnessPackage

    d = Path(outdir)
    host = graph_from_text((d / "host.graph").read_text())
    fam = family_from_json((d / "family.json").read_text())
    lp = d / "lists.json"
    L = lists_from_json(host, lp.read_text()) if lp.exists() else None
    log = json.loads((d / "log.json").read_text())
    return WitnessPackage(host, L, fam, log)


def digest(data: bytes | str) -> str:
    if isinstance(data, str):
        data = data.encode()
    return hashlib.sha256(data).hexdigest()[:16]
