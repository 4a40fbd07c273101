"""Whole-graph statistics: transitivity and average shortest path length."""

from typing import Iterable, Optional

import networkx as nx

from asn_maker.core.errors import DisconnectedPairError
from asn_maker.graph.model import Graph


def transitivity(graph: Graph) -> float:
    """3 x triangles / connected triples; 0 when there are no triples."""
    return float(nx.transitivity(graph.to_networkx()))


def avg_path_length(graph: Graph, nodes: Optional[Iterable[int]] = None) -> float:
    """Mean unweighted shortest-path length over all pairs of the subset.

    Args:
        graph: The graph
        nodes: Subset of node ids; all nodes when omitted

    Raises:
        DisconnectedPairError: If some pair of the subset is not connected
        ValueError: If the subset has fewer than two nodes
    """
    subset = sorted(set(range(graph.n) if nodes is None else nodes))
    if len(subset) < 2:
        raise ValueError("average path length needs at least two nodes")
    g = graph.to_networkx()
    targets = set(subset)
    total = 0
    for source in subset:
        lengths = nx.single_source_shortest_path_length(g, source)
        for target in subset:
            if target <= source:
                continue
            if target not in lengths:
                raise DisconnectedPairError((graph.label(source), graph.label(target)))
        total += sum(d for t, d in lengths.items() if t in targets and t > source)
    pairs = len(subset) * (len(subset) - 1) // 2
    return total / pairs


def same_component(graph: Graph, nodes: Iterable[int]) -> bool:
    """True when every node of the subset lies in one connected component."""
    subset = list(nodes)
    if not subset:
        return True
    component = nx.node_connected_component(graph.to_networkx(), subset[0])
    return all(v in component for v in subset)
