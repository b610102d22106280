from __future__ import annotations

from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listramsey.engine import Outcome, solve_list_hypergraph
from listramsey.errors import DomainError, ResourceError
from listramsey.graph import Graph, GraphFamily, complete, cycle, disjoint_union, named_graph, path, petersen
from listramsey.oracle import (
    ListAssignment,
    canonical_list_assignments,
    colouring_from_lists,
    find_bad_list_assignment,
    good_colouring,
    has_asymmetric_copy,
    is_asymmetric_ramsey,
    is_good_colouring,
    is_minimally_ramsey,
    is_ramsey,
)
from listramsey.witnesses import build_broom_cycle_gadget

from conftest import all_colourings_avoiding, brute_colourable_from_lists, graphs, nx_copies

K3 = GraphFamily.of("K3")
K4 = GraphFamily.of("K4")
P4C3 = GraphFamily((path(4), cycle(3)))


class TestGoodColouring:
    def test_k5_k3(self):
        col = good_colouring(complete(5), K3, 2)
        assert col is not None and is_good_colouring(complete(5), K3, col)
        # a 2-colouring of K5 without monochromatic triangles is two 5-cycles
        for c in (0, 1):
            cls = col.class_graph(complete(5), c)
            assert cls.e == 5 and all(d == 2 for d in cls.degrees)

    def test_k6_k3(self):
        assert good_colouring(complete(6), K3, 2) is None
        assert all_colourings_avoiding(complete(6), [complete(3)]) == 0

    def test_k6_k4(self):
        col = good_colouring(complete(6), K4, 2)
        assert col is not None and is_good_colouring(complete(6), K4, col)

    def test_cap(self):
        with pytest.raises(ResourceError) as ei:
            good_colouring(complete(7), K3, 2, cap=10)
        assert ei.value.cap == "max_edges"

    def test_budget(self):
        with pytest.raises(ResourceError) as ei:
            good_colouring(complete(6), K3, 2, budget=3)
        assert ei.value.cap == "budget"

    def test_r3(self):
        # R(3,3,3) = 17: K6 is not 3-Ramsey for triangles
        col = good_colouring(complete(6), K3, 3)
        assert col is not None and is_good_colouring(complete(6), K3, col)
        with pytest.raises(DomainError):
            good_colouring(complete(3), K3, 1)

    @settings(max_examples=80, deadline=None)
    @given(graphs(min_n=3, max_n=7, min_e=1).filter(lambda G: G.e <= 12),
           st.sampled_from(["K3", "C4", "P3", "K3;P4", "C5", "S3"]))
    def test_against_brute_force(self, G, names):
        fam = GraphFamily.of(*names.split(";"))
        col = good_colouring(G, fam, 2)
        brute = all_colourings_avoiding(G, fam.members)
        assert (col is None) == (brute == 0)
        if col is not None:
            assert is_good_colouring(G, fam, col)


class TestAsymmetric:
    def test_examples(self):
        assert is_asymmetric_ramsey(complete(6), [complete(3), complete(3)]).is_ramsey
        assert not is_asymmetric_ramsey(complete(5), [complete(3), complete(3)]).is_ramsey
        assert is_asymmetric_ramsey(complete(3), [complete(3), complete(2)]).is_ramsey

    def test_r34(self):
        # R(3,4) = 9
        v = is_asymmetric_ramsey(complete(8), [complete(3), complete(4)])
        assert not v.is_ramsey and not has_asymmetric_copy(complete(8), [complete(3), complete(4)], v.witness)

    @settings(max_examples=50, deadline=None)
    @given(graphs(min_n=3, max_n=6, min_e=1).filter(lambda G: G.e <= 11),
           st.sampled_from([("K3", "P3"), ("C4", "K2"), ("P4", "K3"), ("S3", "P3")]))
    def test_against_brute_force(self, G, pair):
        seq = [named_graph(x) for x in pair]
        copies = [nx_copies(F, G) for F in seq]
        brute = True
        for choice in product((0, 1), repeat=G.e):
            col = dict(zip(G.edges, choice))
            if not any(all(col[e] == i for e in c) for i in (0, 1) for c in copies[i]):
                brute = False
                break
        assert is_asymmetric_ramsey(G, seq).is_ramsey == brute


class TestLists:
    def test_examples(self):
        K5 = complete(5)
        assert colouring_from_lists(K5, K3, ListAssignment.identical(K5)) is not None
        gadget = build_broom_cycle_gadget(1, 3)
        assert colouring_from_lists(gadget, P4C3, ListAssignment.identical(gadget)) is None
        tree = path(6)
        L = ListAssignment.from_lists(tree, [(0, 1), (1, 2), (0, 2), (3, 4), (0, 4)])
        assert colouring_from_lists(tree, K3, L) is not None

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_against_brute_force(self, data):
        G = data.draw(graphs(min_n=3, max_n=6, min_e=1).filter(lambda G: G.e <= 9))
        lists = [tuple(sorted(data.draw(st.sets(st.integers(0, 3), min_size=2, max_size=2)))) for _ in G.edges]
        L = ListAssignment.from_lists(G, lists)
        for fam in (K3, GraphFamily.of("P3")):
            col = colouring_from_lists(G, fam, L)
            assert (col is not None) == brute_colourable_from_lists(G, fam.members, lists)
            if col is not None:
                assert is_good_colouring(G, fam, col, L)

    def test_list_validation(self):
        with pytest.raises(DomainError):
            ListAssignment.from_lists(path(3), [(0, 1), (0,)])


class TestBadListSearch:
    def test_gadget_found(self):
        gadget = build_broom_cycle_gadget(1, 3)
        res = find_bad_list_assignment(gadget, P4C3, 2, 2)
        assert res.reason == "FOUND" and res.assignment.is_identical()

    def test_triangle_not_found(self):
        res = find_bad_list_assignment(complete(3), K3, 2, 6)
        assert res.reason == "EXHAUSTED" and res.complete

    def test_k6_k4_small_budget(self):
        res = find_bad_list_assignment(complete(6), K4, 2, 4, budget=50)
        assert res.assignment is None and not res.complete

    def test_canonical_count(self):
        # colours are numbered by first use: (01,01), (01,02), (01,12), (01,23)
        assert list(canonical_list_assignments(2, 2, 4)) == [
            [(0, 1), (0, 1)], [(0, 1), (0, 2)], [(0, 1), (1, 2)], [(0, 1), (2, 3)]]
        # first list is always (0, 1)
        assert all(ls[0] == (0, 1) for ls in canonical_list_assignments(3, 2, 6))


class TestMinimality:
    def test_examples(self):
        assert is_minimally_ramsey(complete(6), K3, 2).is_minimal
        K6i = Graph(7, complete(6).edges)
        assert is_minimally_ramsey(K6i, K3, 2).is_minimal
        rep = is_minimally_ramsey(complete(5), K3, 2)
        assert not rep.is_minimal and not rep.is_ramsey

    def test_certificates_valid(self):
        rep = is_minimally_ramsey(complete(6), K3, 2)
        for e, col in rep.certificates.items():
            G = complete(6).without_edge(e)
            assert is_good_colouring(G, K3, col)
            assert all_colourings_avoiding(G, [complete(3)]) > 0


class TestEngine:
    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_random_list_hypergraphs(self, data):
        nv = data.draw(st.integers(1, 7))
        doms = [data.draw(st.integers(1, 7)) for _ in range(nv)]
        cons = data.draw(st.lists(st.tuples(st.frozensets(st.integers(0, nv - 1), min_size=1, max_size=4),
                                            st.integers(1, 7)), max_size=8))
        res = solve_list_hypergraph(doms, [(sorted(vs), m) for vs, m in cons])

        def ok(a):
            return all(not (len({a[v] for v in vs}) == 1 and (m >> a[next(iter(vs))]) & 1) for vs, m in cons)

        choices = [[c for c in range(3) if d >> c & 1] for d in doms]
        brute = next((a for a in product(*choices) if ok(a)), None)
        assert (res.outcome is Outcome.FOUND) == (brute is not None)
        if res.outcome is Outcome.FOUND:
            assert all(doms[v] >> res.assignment[v] & 1 for v in range(nv))
            assert ok(res.assignment)

    def test_component_cap(self):
        # triangles of K5 form a core, so nothing peels and the whole
        # 10-variable component exceeds the cap
        G = complete(5)
        idx = G.edge_index
        cons = [(sorted(idx[e] for e in c), 3) for c in nx_copies(complete(3), G)]
        res = solve_list_hypergraph([3] * 10, cons, component_cap=9)
        assert res.outcome is Outcome.UNDECIDED

    def test_petersen_c5_free_colouring(self):
        G = petersen()
        fam = GraphFamily((cycle(5),))
        col = good_colouring(G, fam, 2)
        assert col is not None and is_good_colouring(G, fam, col)

    def test_disjoint_components(self):
        G = disjoint_union(complete(6), complete(5))
        assert good_colouring(G, K3, 2) is None
        assert is_ramsey(disjoint_union(complete(5), complete(5)), K3, 2).witness is not None
