from __future__ import annotations

import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from listramsey.classify import classify, in_broom
from listramsey.colourings import (
    broom_colouring,
    colour_k5_for_k3,
    colour_k6_for_k4,
    cstar_colouring,
    forest_list_colouring,
    is_nontrivial,
    nonrepetitive_colouring,
    orient_out_degree_one,
    sparse_triangle_free_colouring,
)
from listramsey.copies import contains
from listramsey.density import max_density
from listramsey.errors import DomainError
from listramsey.graph import Graph, GraphFamily, complete, cycle, named_graph, path, petersen, star
from listramsey.oracle import ListAssignment, is_good_colouring

from conftest import to_nx, two_lists, unicyclic_or_tree

K3 = GraphFamily.of("K3")


def classes(G, col):
    return [col.class_graph(G, c) for c in col.colours()]


def respects(G, col, L):
    return set(col.colour_of) == set(G.edges) and all(col[e] in L[e] for e in G.edges)


def acyclic(H: Graph) -> bool:
    return nx.is_forest(to_nx(H)) if H.n else True


class TestOrientation:
    @settings(max_examples=100, deadline=None)
    @given(unicyclic_or_tree())
    def test_out_degree_at_most_one(self, G):
        out = orient_out_degree_one(G)
        for u, w in out.items():
            assert tuple(sorted((u, w))) in G.edges
        # every edge is oriented away from exactly one endpoint
        oriented = {tuple(sorted(p)) for p in out.items()}
        assert len(oriented) == G.e
        assert len(out) == G.e


class TestNonrepetitive:
    def test_c4(self):
        G = cycle(4)
        col = nonrepetitive_colouring(G, ListAssignment.identical(G))
        for H in classes(G, col):
            assert H.max_degree() <= 1

    def test_c3_nontrivial(self):
        G = cycle(3)
        L = ListAssignment.identical(G)
        assert nonrepetitive_colouring(G, L) is None
        assert is_nontrivial(G, range(3), L)

    def test_dense_rejected(self):
        with pytest.raises(DomainError):
            nonrepetitive_colouring(complete(4), ListAssignment.identical(complete(4)))
        G = Graph(4, ((0, 1), (2, 3)))
        with pytest.raises(DomainError):
            nonrepetitive_colouring(G, ListAssignment.identical(G))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_star_forest_classes(self, data):
        G = data.draw(unicyclic_or_tree())
        L = ListAssignment.from_lists(G, data.draw(two_lists(G)))
        col = nonrepetitive_colouring(G, L)
        comp = [u for u in range(G.n) if G.adj[u]]
        if col is None:
            assert is_nontrivial(G, comp, L)
            return
        assert respects(G, col, L)
        for H in classes(G, col):
            assert classify(H).is_star_forest


class TestCstarAndBroom:
    def _pendant_triangle(self):
        # triangle 0-1-2 with a pendant path of length two at each vertex
        edges = [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (1, 5), (5, 6), (2, 7), (7, 8)]
        return Graph(9, tuple(edges))

    def test_triangle_with_trees(self):
        G = self._pendant_triangle()
        col = cstar_colouring(G, ListAssignment.identical(G))
        assert all(classify(H).is_cstar_graph for H in classes(G, col))

    def test_c5_with_stars_broom(self):
        edges = list(cycle(5).edges) + [(i, 5 + 2 * i) for i in range(5)] + [(i, 6 + 2 * i) for i in range(5)]
        G = Graph(15, tuple(edges))
        col = broom_colouring(G, ListAssignment.identical(G))
        assert all(classify(H).is_b_graph for H in classes(G, col))

    def test_bare_triangle(self):
        G = cycle(3)
        col = broom_colouring(G, ListAssignment.identical(G))
        sizes = sorted(H.e for H in classes(G, col))
        assert sizes == [1, 2]

    def test_single_star(self):
        G = star(4)
        col = cstar_colouring(G, ListAssignment.identical(G))
        assert all(classify(H).is_star_forest for H in classes(G, col))

    @settings(max_examples=150, deadline=None)
    @given(st.data())
    def test_class_properties(self, data):
        G = data.draw(unicyclic_or_tree(max_n=10))
        L = ListAssignment.from_lists(G, data.draw(two_lists(G)))
        c1 = cstar_colouring(G, L)
        c2 = broom_colouring(G, L)
        assert respects(G, c1, L) and respects(G, c2, L)
        for H in classes(G, c1):
            assert classify(H).is_cstar_graph
        for H in classes(G, c2):
            assert classify(H).is_b_graph
            for comp in H.edge_components():
                assert in_broom(comp)


class TestForest:
    @pytest.mark.parametrize("G", [complete(4), petersen(), named_graph("K3,3"), path(5)])
    def test_identical(self, G):
        col = forest_list_colouring(G, ListAssignment.identical(G))
        assert all(acyclic(H) for H in classes(G, col))

    def test_degree_four_rejected(self):
        with pytest.raises(DomainError):
            forest_list_colouring(complete(5), ListAssignment.identical(complete(5)))

    @settings(max_examples=100, deadline=None)
    @given(st.data())
    def test_random_lists(self, data):
        G = data.draw(st.sampled_from([complete(4), petersen(), named_graph("K3,3"), cycle(7)]))
        L = ListAssignment.from_lists(G, data.draw(two_lists(G, palette=3)))
        col = forest_list_colouring(G, L)
        assert respects(G, col, L)
        assert all(acyclic(H) for H in classes(G, col))


class TestK5K3:
    def test_identical(self):
        G = complete(5)
        col = colour_k5_for_k3(ListAssignment.identical(G))
        assert is_good_colouring(G, K3, col)
        assert sorted(H.e for H in classes(G, col)) == [5, 5]

    def test_edge_not_in_triangle_branch(self):
        # colour 0 is available only on edge 01, and no availability graph
        # holds a Hamiltonian cycle (fixture found by search, then frozen)
        G = complete(5)
        lists = [(0, 1), (1, 2), (1, 2), (1, 2), (1, 3), (1, 3), (2, 3), (2, 3), (2, 3), (2, 3)]
        L = ListAssignment.from_lists(G, lists)
        col, case = colour_k5_for_k3(L, return_case=True)
        assert case == "edge-not-in-triangle"
        assert col[(0, 1)] == 0
        assert is_good_colouring(G, K3, col, L)

    def test_every_case_reachable_on_random_lists(self):
        G = complete(5)
        rng = random.Random(5)
        seen = set()
        for _ in range(3000):
            L = ListAssignment({e: tuple(rng.sample(range(4), 2)) for e in G.edges}, 2)
            col, case = colour_k5_for_k3(L, return_case=True)
            assert is_good_colouring(G, K3, col, L)
            seen.add(case)
        assert {"C5", "edge-not-in-triangle"} <= seen

    @settings(max_examples=300, deadline=None)
    @given(st.data())
    def test_random(self, data):
        G = complete(5)
        L = ListAssignment.from_lists(G, data.draw(two_lists(G, palette=5)))
        col = colour_k5_for_k3(L)
        assert is_good_colouring(G, K3, col, L)


class TestK6K4:
    def test_identical(self):
        G = complete(6)
        col = colour_k6_for_k4(ListAssignment.identical(G))
        assert is_good_colouring(G, GraphFamily.of("K4"), col)
        shapes = sorted((H.e, max(H.degrees)) for H in classes(G, col))
        assert shapes == [(6, 2), (9, 3)]  # 2*K3 and K3,3
        assert contains(named_graph("K3,3"), col.class_graph(G, 0))

    def test_adversarial_split(self):
        # a perfect matching gets palette {2, 3}, the rest {0, 1}
        G = complete(6)
        match = {(0, 1), (2, 3), (4, 5)}
        L = ListAssignment({e: ((2, 3) if e in match else (0, 1)) for e in G.edges}, 2)
        col = colour_k6_for_k4(L)
        assert is_good_colouring(G, GraphFamily.of("K4"), col, L)

    @settings(max_examples=200, deadline=None)
    @given(st.data())
    def test_random(self, data):
        G = complete(6)
        L = ListAssignment.from_lists(G, data.draw(two_lists(G, palette=4)))
        col = colour_k6_for_k4(L, seed=data.draw(st.integers(0, 1000)))
        assert is_good_colouring(G, GraphFamily.of("K4"), col, L)


class TestSparseTriangleFree:
    @pytest.mark.parametrize("G", [complete(4), named_graph("W5").without_edge((0, 1)), cycle(6), complete(5)])
    def test_examples(self, G):
        assert max_density(G) <= 2
        col = sparse_triangle_free_colouring(G, ListAssignment.identical(G))
        assert is_good_colouring(G, K3, col)

    def test_dense_rejected(self):
        with pytest.raises(DomainError):
            sparse_triangle_free_colouring(complete(6), ListAssignment.identical(complete(6)))

    @settings(max_examples=80, deadline=None)
    @given(st.data())
    def test_random(self, data):
        n = data.draw(st.integers(3, 8))
        rng = random.Random(data.draw(st.integers(0, 10 ** 6)))
        edges = [e for e in complete(n).edges if rng.random() < 0.5]
        G = Graph(n, tuple(edges))
        if G.e and max_density(G) > 2:
            return
        L = ListAssignment.from_lists(G, data.draw(two_lists(G, palette=3)))
        trace = []
        col = sparse_triangle_free_colouring(G, L, trace)
        assert is_good_colouring(G, K3, col, L)
