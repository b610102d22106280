from __future__ import annotations

import json
import subprocess
import sys

import pytest

from listramsey.cli import run
from listramsey.fileio import (
    colouring_from_json,
    family_to_json,
    graph_to_text,
    lists_from_json,
    lists_to_json,
    read_family,
    read_graph,
)
from listramsey.graph import GraphFamily, complete, cycle, path
from listramsey.oracle import ListAssignment, is_good_colouring
from listramsey.witnesses import build_broom_cycle_gadget


def body(text: str) -> list[str]:
    return [ln for ln in text.splitlines() if not ln.startswith("#")]


@pytest.fixture
def files(tmp_path):
    (tmp_path / "K4.graph").write_text(graph_to_text(complete(4)))
    (tmp_path / "K5.graph").write_text(graph_to_text(complete(5)))
    (tmp_path / "K3.json").write_text(family_to_json(GraphFamily.of("K3")))
    return tmp_path


class TestCommands:
    def test_density(self, files, capsys):
        assert run(["density", "--graph", str(files / "K4.graph")]) == 0
        out = capsys.readouterr().out
        assert "m2 = 5/2" in body(out)
        assert any(ln.startswith("# input graph:") and "sha256:" in ln for ln in out.splitlines())
        assert any("(varies)" in ln for ln in out.splitlines() if "timestamp" in ln)

    def test_ramsey_not_ramsey(self, files, capsys):
        col_path = files / "col.json"
        code = run(["ramsey", "--graph", str(files / "K5.graph"), "--family", str(files / "K3.json"),
                    "--r", "2", "--colouring-out", str(col_path)])
        assert code == 2
        col = colouring_from_json(complete(5), col_path.read_text())
        assert is_good_colouring(complete(5), GraphFamily.of("K3"), col)
        assert "ramsey = False" in capsys.readouterr().out

    def test_ramsey_yes_and_minimal(self, capsys):
        assert run(["ramsey", "--graph", "K6", "--family", "K3"]) == 0
        assert run(["ramsey", "--graph", "K6", "--family", "K3", "--minimal"]) == 0
        assert "minimally_ramsey = True" in capsys.readouterr().out

    def test_asymmetric(self, capsys):
        assert run(["ramsey", "--graph", "K3", "--asymmetric", "K3,K2"]) == 0
        assert run(["ramsey", "--graph", "K5", "--asymmetric", "K3,K3"]) == 2

    def test_caps(self, capsys):
        assert run(["ramsey", "--graph", "K7", "--family", "K3", "--max-edges", "5"]) == 3
        assert "UNDECIDED" in capsys.readouterr().out

    def test_usage(self, capsys):
        assert run(["nonsense"]) == 64
        assert run(["density", "--bogus"]) == 64
        assert run([]) == 64
        assert run(["density"]) == 64
        assert run(["density", "--graph", "Q9"]) == 64

    def test_domain_error_exit(self, capsys):
        assert run(["colour", "--graph", "K5", "--name", "forest"]) == 64

    def test_lists(self, tmp_path, capsys):
        G = build_broom_cycle_gadget(1, 3)
        gp = tmp_path / "g.graph"
        gp.write_text(graph_to_text(G))
        lp = tmp_path / "l.json"
        lp.write_text(lists_to_json(G, ListAssignment.identical(G)))
        assert run(["lists", "--graph", str(gp), "--family", "P4,C3", "--lists", str(lp)]) == 2
        out_l = tmp_path / "bad.json"
        assert run(["lists", "--graph", str(gp), "--family", "P4,C3", "--search", "--palette-cap", "2",
                    "--lists-out", str(out_l)]) == 0
        assert lists_from_json(G, out_l.read_text()).is_identical()
        assert run(["lists", "--graph", "K3", "--family", "K3", "--search", "--palette-cap", "6"]) == 2

    def test_colour(self, capsys):
        assert run(["colour", "--graph", "C3", "--name", "nonrepetitive"]) == 2
        assert run(["colour", "--graph", "K5", "--name", "k5k3", "--family", "K3"]) == 0
        out = capsys.readouterr().out
        assert "good_for_family = True" in out and "case = C5" in out
        assert run(["colour", "--graph", "petersen", "--name", "forest"]) == 0
        assert run(["colour", "--graph", "C3+C5", "--name", "aux-guided", "--family", "broom2,C3+C5",
                    "--phi", "C3=0,C5=1"]) == 0
        assert run(["colour", "--graph", "C3", "--name", "aux-guided"]) == 64

    def test_witness(self, tmp_path, capsys):
        assert run(["witness", "--family", "P4,C3", "--outdir", str(tmp_path / "w")]) == 0
        assert (tmp_path / "w" / "lists.json").exists()
        assert run(["witness", "--family", "P4,C3", "--kind", "plain"]) == 0
        assert run(["witness", "--family", "broom2,C3+C5", "--kind", "plain", "--cap", "7"]) == 2

    def test_explore(self, tmp_path, capsys):
        tp = tmp_path / "t.txt"
        assert run(["explore", "--graph", "K6", "--family", "K4", "--trace-out", str(tp)]) == 0
        out = body(capsys.readouterr().out)
        assert "balance = holds" in out and "round_trip = exact" in out and "eta = 1/2" in out
        assert tp.read_text().startswith("S ")

    def test_aux(self, capsys):
        assert run(["aux", "--family", "broom2,C3+C5", "--cap", "7"]) == 0
        assert run(["aux", "--family", "broom2,C3+C5,C3+C7,C5+C7", "--cap", "7"]) == 2
        assert run(["aux", "--family", "C3", "--cap", "3"]) == 2

    def test_sweep_deterministic(self, tmp_path, capsys):
        args = ["sweep", "--mode", "ramsey", "--n", "10", "--family", "K3", "--p", "0.01,0.5",
                "--trials", "10", "--seed", "7"]
        a, b = tmp_path / "a.csv", tmp_path / "b.csv"
        assert run(args + ["--out", str(a)]) == 0
        assert run(args + ["--out", str(b)]) == 0
        assert body(a.read_text()) == body(b.read_text())
        rows = body(a.read_text())
        assert rows[0] == "n,p,trials,successes,undecided,phat,stderr,mode,family,seed"
        assert rows[1].split(",")[1] == "0.01"

    def test_sweep_p_expressions(self, capsys):
        assert run(["sweep", "--mode", "unicyclic", "--n", "100", "--family", "K3", "--p", "0.1/n,0.2*n^(-2/5)",
                    "--trials", "3"]) == 0
        rows = body(capsys.readouterr().out)
        assert [r.split(",")[1] for r in rows[1:]] == ["0.1/n", "0.2*n^(-2/5)"]

    def test_module_entry_point(self):
        res = subprocess.run([sys.executable, "-m", "listramsey", "density", "--graph", "K3"],
                             capture_output=True, text=True)
        assert res.returncode == 0 and "m2 = 2" in res.stdout


class TestFormats:
    def test_graph_round_trip(self, tmp_path):
        p = tmp_path / "g"
        p.write_text("# comment\n" + graph_to_text(cycle(5)))
        assert read_graph(p) == cycle(5)
        assert read_graph("C5") == cycle(5)

    def test_family(self, tmp_path):
        p = tmp_path / "f.json"
        fam = GraphFamily((path(4), cycle(3)), ("P4", "C3"))
        p.write_text(family_to_json(fam))
        back = read_family(p)
        assert back.members == fam.members and back.names == fam.names
        assert read_family("K3,3").members == read_family("K3,3").members
        assert len(read_family("K3,3").members) == 1
        assert len(read_family("K3,K4").members) == 2

    def test_lists_json(self):
        G = path(3)
        L = ListAssignment.from_lists(G, [(0, 2), (1, 3)])
        text = lists_to_json(G, L)
        assert json.loads(text) == {"r": 2, "lists": [[0, [0, 2]], [1, [1, 3]]]}
        assert lists_from_json(G, text) == L

    def test_hypergraph_dump(self):
        from listramsey.fileio import hypergraph_dump, hypergraph_from_dump
        from listramsey.hypergraph import f_hypergraph

        H = f_hypergraph(complete(4), GraphFamily.of("K3"))
        back = hypergraph_from_dump(hypergraph_dump(H), H.vertices)
        assert back == H
