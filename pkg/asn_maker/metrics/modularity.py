"""Newman modularity for partitions and Lazar modularity for covers."""

import networkx as nx

from asn_maker.core.errors import ContractError
from asn_maker.graph.model import Cover, Graph


def modularity(graph: Graph, partition: Cover) -> float:
    """Newman modularity Q = sum_c [m_c/m - (vol_c/2m)^2].

    Edge weights are honoured when the graph carries them.

    Raises:
        ContractError: If the cover overlaps (use lazar_modularity) or the
            graph has no edges
    """
    if not partition.is_partition():
        raise ContractError(
            "modularity needs a partition; use lazar_modularity for overlapping covers"
        )
    if graph.m == 0:
        raise ContractError("modularity is undefined on a graph without edges")
    return float(
        nx.community.modularity(
            graph.to_networkx(), [set(c) for c in partition.communities], weight="weight"
        )
    )


def lazar_modularity(graph: Graph, cover: Cover) -> float:
    """Overlapping modularity averaging a membership-normalized node term
    and an edge-density factor over communities.

    M = 1/|C| sum_c [sum_{i in c} (k_in - k_out) / (d_i s_i) / n_c] * [m_c / C(n_c, 2)]

    Nodes of degree zero contribute nothing and singleton communities have
    density factor 0.
    """
    if len(cover) == 0:
        return 0.0
    adjacency = graph.adjacency
    degrees = graph.degrees
    memberships = cover.memberships
    total = 0.0
    for community in cover.communities:
        size = len(community)
        if size < 2:
            continue
        node_term = 0.0
        twice_internal = 0
        for i in community:
            d = int(degrees[i])
            if d == 0:
                continue
            k_in = len(adjacency[i] & community)
            twice_internal += k_in
            node_term += (k_in - (d - k_in)) / (d * memberships[i])
        density = (twice_internal / 2) / (size * (size - 1) / 2)
        total += (node_term / size) * density
    return float(total / len(cover))


def selection_score(graph: Graph, cover: Cover) -> float:
    """Score used to compare grid points: Newman Q for partitions, Lazar
    modularity otherwise. Graphs without edges score 0."""
    if graph.m == 0:
        return 0.0
    if cover.is_partition():
        return modularity(graph, cover)
    return lazar_modularity(graph, cover)

