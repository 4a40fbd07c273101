"""Tests for the graph and cover data model."""

import pytest

from asn_maker.core.errors import CoverRangeError, GraphFormatError
from asn_maker.graph.model import Cover, Graph, split_by_components, unique_communities


class TestGraph:
    def test_from_edges_canonicalizes(self):
        graph = Graph.from_edges(3, [(2, 1), (0, 1), (1, 2)])
        assert graph.edges == ((0, 1), (1, 2))
        assert graph.m == 2
        assert not graph.is_weighted

    def test_weights_follow_canonical_order(self):
        graph = Graph.from_edges(3, [(2, 1), (1, 0)], weights={(2, 1): 2.5, (1, 0): 0.5})
        assert graph.weights == (0.5, 2.5)
        assert graph.weight(2, 1) == 2.5
        assert graph.strengths.tolist() == [0.5, 3.0, 2.5]

    @pytest.mark.parametrize(
        "n, edges",
        [
            (3, ((1, 1),)),
            (3, ((0, 3),)),
            (3, ((1, 0),)),
            (3, ((0, 1), (0, 1))),
        ],
    )
    def test_invalid_edges_rejected(self, n, edges):
        with pytest.raises(GraphFormatError):
            Graph(n=n, edges=edges)

    def test_non_positive_weight_rejected(self):
        with pytest.raises(GraphFormatError):
            Graph.from_edges(2, [(0, 1)], weights={(0, 1): 0.0})

    def test_adjacency_and_degrees(self, two_triangles):
        assert two_triangles.adjacency[2] == frozenset({0, 1, 3})
        assert two_triangles.degrees.tolist() == [2, 2, 3, 3, 2, 2]

    def test_networkx_view_keeps_isolated_nodes(self):
        graph = Graph.from_edges(4, [(0, 1)])
        view = graph.to_networkx()
        assert sorted(view.nodes) == [0, 1, 2, 3]
        assert view[0][1]["weight"] == 1.0

    def test_digest_depends_only_on_content(self):
        a = Graph.from_edges(3, [(0, 1), (1, 2)])
        b = Graph.from_edges(3, [(2, 1), (1, 0)], labels=["x", "y", "z"])
        c = Graph.from_edges(4, [(0, 1), (1, 2)])
        assert a.digest() == b.digest()
        assert a.digest() != c.digest()


class TestCover:
    def test_from_communities_adds_singletons(self):
        cover = Cover.from_communities([{0, 1}], 4)
        assert cover.canonical() == ((0, 1), (2,), (3,))
        assert cover.is_partition()

    def test_overlap_detected(self):
        cover = Cover.from_communities([{0, 1, 2}, {2, 3}], 4)
        assert not cover.is_partition()
        assert cover.memberships.tolist() == [1, 1, 2, 1]

    def test_incomplete_cover_rejected(self):
        with pytest.raises(CoverRangeError):
            Cover.from_communities([{0, 1}], 3, complete=False)

    def test_out_of_range_rejected(self):
        with pytest.raises(CoverRangeError):
            Cover.from_communities([{0, 5}], 3)

    def test_from_labels(self):
        cover = Cover.from_labels([1, 1, 0, 0, 2])
        assert cover.canonical() == ((0, 1), (2, 3), (4,))

    def test_labels_vector_requires_partition(self):
        with pytest.raises(ValueError):
            Cover.from_communities([{0, 1}, {1, 2}], 3).labels_vector()

    def test_indicator_matrix(self):
        matrix = Cover.from_communities([{0, 1}, {1, 2}], 3).indicator_matrix()
        assert matrix.sum(axis=1).tolist() == [2, 2]
        assert matrix[:, 1].all()

    def test_canonical_ignores_order(self):
        a = Cover.from_communities([{3, 2}, {1, 0}], 4)
        b = Cover.from_communities([{0, 1}, {2, 3}], 4)
        assert a.canonical() == b.canonical()


def test_split_by_components():
    graph = Graph.from_edges(5, [(0, 1), (2, 3)])
    cover = Cover.from_communities([{0, 1, 2, 3}, {4}], 5)
    assert split_by_components(graph, cover).canonical() == ((0, 1), (2, 3), (4,))


def test_unique_communities_keeps_first_occurrence():
    assert unique_communities([[1, 0], [2], [0, 1]]) == [frozenset({0, 1}), frozenset({2})]
