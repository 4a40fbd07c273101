"""Per-community descriptive statistics: conductance, normalized cut,
density, and the per-run profile reported by the statistics table."""

from dataclasses import dataclass
from typing import Iterable

import networkx as nx
import numpy as np

from asn_maker.graph.model import Cover, Graph
from asn_maker.metrics.modularity import lazar_modularity, modularity


def _cut_and_volume(graph: Graph, community: Iterable[int]):
    g = graph.to_networkx()
    nodes = set(community)
    if not nodes:
        raise ValueError("community must be non-empty")
    cut = nx.cut_size(g, nodes)
    volume = nx.volume(g, nodes)
    return nodes, cut, volume


def conductance(graph: Graph, community: Iterable[int]) -> float:
    """c_S / (2 m_S + c_S); 0 when the community has no incident edges."""
    _, cut, volume = _cut_and_volume(graph, community)
    if volume == 0:
        return 0.0
    return float(cut / volume)


def ncut(graph: Graph, community: Iterable[int]) -> float:
    """Normalized cut c_S / vol(S) + c_S / vol(V \\ S).

    vol(S) = 2 m_S + c_S; the complement volume counts the boundary edges
    once, as for S.
    """
    _, cut, volume = _cut_and_volume(graph, community)
    if cut == 0:
        return 0.0
    outside = 2 * graph.m - volume
    return float(cut / volume + cut / outside)


def density(graph: Graph, community: Iterable[int]) -> float:
    """Internal edge density 2 m_S / (|S| (|S| - 1)); singletons count as 1."""
    nodes = set(community)
    if not nodes:
        raise ValueError("community must be non-empty")
    if len(nodes) == 1:
        return 1.0
    return float(nx.density(graph.to_networkx().subgraph(nodes)))


@dataclass(frozen=True)
class CommunityProfile:
    """Descriptive statistics of one detector output on one network."""

    communities: int
    mean_size: float
    mean_density: float
    modularity: float
    mean_conductance: float
    mean_ncut: float


def community_profile(graph: Graph, cover: Cover) -> CommunityProfile:
    """Summarize a cover; modularity is Newman's for partitions and
    Lazar's for overlapping covers."""
    communities = cover.communities
    if graph.m == 0:
        q = 0.0
    elif cover.is_partition():
        q = modularity(graph, cover)
    else:
        q = lazar_modularity(graph, cover)
    return CommunityProfile(
        communities=len(communities),
        mean_size=float(np.mean([len(c) for c in communities])),
        mean_density=float(np.mean([density(graph, c) for c in communities])),
        modularity=q,
        mean_conductance=float(np.mean([conductance(graph, c) for c in communities])),
        mean_ncut=float(np.mean([ncut(graph, c) for c in communities])),
    )
