import random

import pytest
from hypothesis import given, strategies as st

from crownkernel import (
    Graph,
    GraphError,
    K0,
    greedy_clique_cover,
    greedy_maximal_matching,
    induced_subgraph,
    isolated_vertices,
    max_bipartite_matching,
    min_vertex_cover_bipartite,
)
from crownkernel.graph import clique_cover_is_valid, matching_is_valid, bits

from conftest import complete, empty, path, random_graph, star


@st.composite
def graphs(draw, max_n=12):
    n = draw(st.integers(min_value=0, max_value=max_n))
    edges = []
    for u in range(n):
        for v in range(u + 1, n):
            if draw(st.booleans()):
                edges.append((u, v))
    return Graph.from_edges(n, edges)


class TestGraphType:
    def test_rejects_self_loop(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 0)])

    def test_rejects_out_of_range(self):
        with pytest.raises(GraphError):
            Graph.from_edges(2, [(0, 5)])

    def test_rejects_asymmetric_adjacency(self):
        with pytest.raises(GraphError):
            Graph(2, (0b10, 0b00))

    def test_edges_and_complement(self):
        g = path(3)
        assert g.edges() == [(0, 1), (1, 2)]
        assert g.complement().edges() == [(0, 2)]
        assert g.m == 2

    @given(graphs())
    def test_complement_involution(self, g):
        assert g.complement().complement() == g


class TestInducedSubgraph:
    def test_clique_restriction(self):
        g, mapping = induced_subgraph(complete(3), {0, 1})
        assert g.n == 2 and g.edges() == [(0, 1)]
        assert mapping == {0: 0, 1: 1}

    def test_empty_selection(self):
        g, mapping = induced_subgraph(complete(4), set())
        assert g == K0 and mapping == {}

    def test_path_endpoints(self):
        g, _ = induced_subgraph(path(3), {0, 2})
        assert g.n == 2 and g.m == 0

    def test_out_of_range_vertex(self):
        with pytest.raises(GraphError):
            induced_subgraph(path(3), {0, 7})

    @given(graphs(), st.sets(st.integers(min_value=0, max_value=11)))
    def test_edge_correspondence(self, g, selection):
        selection = {v for v in selection if v < g.n}
        sub, mapping = induced_subgraph(g, selection)
        assert sub.n == len(selection)
        assert sorted(mapping) == sorted(selection)
        for u in selection:
            for v in selection:
                if u < v:
                    assert g.has_edge(u, v) == sub.has_edge(mapping[u], mapping[v])


class TestIsolatedVertices:
    def test_k0(self):
        assert isolated_vertices(K0) == set()

    def test_single_edge_plus_vertex(self):
        assert isolated_vertices(Graph.from_edges(3, [(0, 1)])) == {2}

    def test_complete(self):
        assert isolated_vertices(complete(5)) == set()


class TestGreedyMaximalMatching:
    def test_path_lexicographic(self):
        assert greedy_maximal_matching(path(4)) == [(0, 1), (2, 3)]

    def test_star(self):
        assert len(greedy_maximal_matching(star(5))) == 1

    def test_k0(self):
        assert greedy_maximal_matching(K0) == []

    def test_maximality_random(self):
        rng = random.Random(1)
        for _ in range(200):
            g = random_graph(rng, rng.randint(0, 20), rng.random())
            m = greedy_maximal_matching(g)
            assert matching_is_valid(g, m)
            saturated = {v for e in m for v in e}
            for u, v in g.edges():
                assert u in saturated or v in saturated


class TestBipartiteMatching:
    def test_complete_bipartite(self):
        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        assert len(max_bipartite_matching(g, {0, 1}, {2, 3})) == 2

    def test_star_center_on_a_side(self):
        g = star(5)
        assert len(max_bipartite_matching(g, {0}, {1, 2, 3, 4})) == 1

    def test_no_edges(self):
        assert max_bipartite_matching(empty(4), {0, 1}, {2, 3}) == []

    def test_overlapping_sides_rejected(self):
        with pytest.raises(GraphError):
            max_bipartite_matching(path(3), {0, 1}, {1, 2})


class TestKoenigCover:
    def test_complete_bipartite(self):
        g = Graph.from_edges(4, [(0, 2), (0, 3), (1, 2), (1, 3)])
        m = max_bipartite_matching(g, {0, 1}, {2, 3})
        cover = min_vertex_cover_bipartite(g, {0, 1}, {2, 3}, m)
        assert len(cover) == 2

    def test_star(self):
        g = star(5)
        m = max_bipartite_matching(g, {0}, {1, 2, 3, 4})
        assert min_vertex_cover_bipartite(g, {0}, {1, 2, 3, 4}, m) == {0}

    def test_edgeless(self):
        assert min_vertex_cover_bipartite(empty(4), {0, 1}, {2, 3}, []) == set()

    def test_koenig_equality_random(self):
        rng = random.Random(2)
        for _ in range(200):
            na, nb = rng.randint(0, 12), rng.randint(0, 12)
            side_a = set(range(na))
            side_b = set(range(na, na + nb))
            edges = [
                (a, b) for a in side_a for b in side_b if rng.random() < rng.random()
            ]
            g = Graph.from_edges(na + nb, edges)
            m = max_bipartite_matching(g, side_a, side_b)
            cover = min_vertex_cover_bipartite(g, side_a, side_b, m)
            assert len(cover) == len(m)
            for u, v in edges:
                assert u in cover or v in cover
            # each matching edge meets the cover exactly once, covered vertices matched
            matched = {v for e in m for v in e}
            assert cover <= matched
            for a, b in m:
                assert (a in cover) != (b in cover)


class TestGreedyCliqueCover:
    def test_complete(self):
        assert greedy_clique_cover(complete(4)) == [frozenset(range(4))]

    def test_edgeless(self):
        cover = greedy_clique_cover(empty(3))
        assert cover == [frozenset({0}), frozenset({1}), frozenset({2})]

    def test_path(self):
        assert greedy_clique_cover(path(3)) == [frozenset({0, 1}), frozenset({2})]

    @given(graphs())
    def test_validity(self, g):
        assert clique_cover_is_valid(g, greedy_clique_cover(g))


def test_bits_ascending():
    assert list(bits(0b101001)) == [0, 3, 5]
