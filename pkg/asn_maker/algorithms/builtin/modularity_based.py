"""Greedy modularity maximizers backed by networkx."""

from typing import Mapping

import networkx as nx

from asn_maker.graph.model import Cover, Graph


def _singletons(graph: Graph) -> Cover:
    return Cover.from_labels(list(range(graph.n)))


def louvain(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Louvain: local node moves followed by aggregation, until no move
    improves modularity."""
    if graph.m == 0:
        return _singletons(graph)
    resolution = float(params.get("resolution", 1.0))
    communities = nx.community.louvain_communities(
        graph.to_networkx(), weight="weight", resolution=resolution, seed=seed
    )
    return Cover.from_communities(communities, graph.n)


def cnm(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Clauset-Newman-Moore greedy agglomerative merging."""
    if graph.m == 0:
        return _singletons(graph)
    communities = nx.community.greedy_modularity_communities(
        graph.to_networkx(), weight="weight"
    )
    return Cover.from_communities(communities, graph.n)
