"""Dendrogram-based detectors: Girvan-Newman, Walktrap and adjacency
cosine agglomeration."""

import math
from typing import List, Mapping, Sequence

import networkx as nx
import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import pdist

from asn_maker.core.errors import AlgorithmError
from asn_maker.graph.model import Cover, Graph, split_by_components
from asn_maker.metrics.modularity import modularity

NSIM_LEVELS = 5


def _singletons(graph: Graph) -> Cover:
    return Cover.from_labels(list(range(graph.n)))


def _adjacency_matrix(graph: Graph) -> np.ndarray:
    return nx.to_numpy_array(graph.to_networkx(), nodelist=range(graph.n), weight="weight")


def _modularity_terms(graph: Graph, communities: Sequence[Sequence[int]]) -> float:
    """Sum of the per-community modularity terms w_c / W - (s_c / 2W)^2."""
    strengths = graph.strengths
    total = strengths.sum() / 2.0
    g = graph.to_networkx()
    value = 0.0
    for community in communities:
        internal = g.subgraph(community).size(weight="weight")
        volume = strengths[list(community)].sum()
        value += internal / total - (volume / (2.0 * total)) ** 2
    return value


def girvan_newman(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Remove max-betweenness edges until none remain; return the level of
    the dendrogram with the largest modularity (earliest on ties)."""
    if graph.m == 0:
        return _singletons(graph)
    g = graph.to_networkx()
    best = Cover.from_communities(nx.connected_components(g), graph.n)
    best_q = modularity(graph, best)
    for level in nx.community.girvan_newman(nx.Graph(g)):
        cover = Cover.from_communities(level, graph.n)
        q = modularity(graph, cover)
        if q > best_q:
            best, best_q = cover, q
    return best


def walktrap(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Walktrap: Ward agglomeration on t-step random-walk distances.

    With P the transition matrix of A + I and D its degree matrix, node i is
    embedded as D^{-1/2} (P^t)_i; Euclidean distances of these vectors are
    the walk distances. Each connected component gets its own dendrogram,
    cut at the level with the largest modularity contribution.
    """
    t = int(params.get("t", 4))
    if t < 1:
        raise AlgorithmError(f"walktrap needs t >= 1, got {t}")
    if graph.m == 0:
        return _singletons(graph)

    adjacency = _adjacency_matrix(graph) + np.eye(graph.n)
    degree = adjacency.sum(axis=1)
    walk = np.linalg.matrix_power(adjacency / degree[:, None], t)
    embedding = walk / np.sqrt(degree)[None, :]

    communities: List[List[int]] = []
    for component in nx.connected_components(graph.to_networkx()):
        nodes = sorted(component)
        if len(nodes) < 3:
            communities.append(nodes)
            continue
        tree = linkage(embedding[nodes], method="ward")
        best_parts, best_q = [nodes], _modularity_terms(graph, [nodes])
        for k in range(2, len(nodes) + 1):
            labels = fcluster(tree, t=k, criterion="maxclust")
            parts = [
                [node for node, label in zip(nodes, labels) if label == value]
                for value in np.unique(labels)
            ]
            q = _modularity_terms(graph, parts)
            if q > best_q:
                best_parts, best_q = parts, q
        communities.extend(best_parts)
    return Cover.from_communities(communities, graph.n)


def nsim_cut_counts(n: int) -> List[int]:
    """The cluster counts probed by the level parameter: five steps from 2
    to ceil(n / 5)."""
    top = max(2, math.ceil(n / 5))
    return [int(round(x)) for x in np.linspace(2, top, NSIM_LEVELS)]


def nsim_aggl(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Average-linkage agglomeration on cosine similarity of A + I rows.

    Params:
        level: Index into nsim_cut_counts(n), choosing the cluster count
    """
    level = int(params.get("level", 0))
    if not 0 <= level < NSIM_LEVELS:
        raise AlgorithmError(f"nsim_aggl level={level} outside 0..{NSIM_LEVELS - 1}")
    if graph.n < 2 or graph.m == 0:
        return _singletons(graph)

    clusters = min(nsim_cut_counts(graph.n)[level], graph.n)
    rows = _adjacency_matrix(graph) + np.eye(graph.n)
    tree = linkage(pdist(rows, metric="cosine"), method="average")
    labels = fcluster(tree, t=clusters, criterion="maxclust")
    return split_by_components(graph, Cover.from_labels(labels))
