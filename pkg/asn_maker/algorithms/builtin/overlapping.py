"""Overlapping detectors: k-clique percolation and link clustering."""

from itertools import combinations
from typing import Dict, List, Mapping

import networkx as nx
import numpy as np
from scipy.cluster.hierarchy import fcluster, linkage
from scipy.spatial.distance import squareform

from asn_maker.core.errors import AlgorithmError
from asn_maker.graph.model import Cover, Graph, unique_communities


def kclique(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """k-clique percolation; nodes in no k-clique become singletons."""
    k = int(params.get("k", 3))
    if k < 2:
        raise AlgorithmError(f"kclique needs k >= 2, got {k}")
    communities = nx.community.k_clique_communities(graph.to_networkx(), k)
    ordered = sorted((sorted(c) for c in communities))
    return Cover.from_communities(ordered, graph.n)


def edge_similarity(graph: Graph) -> np.ndarray:
    """Jaccard similarity of the inclusive neighborhoods of the two outer
    endpoints, for every pair of edges sharing a node; 0 otherwise."""
    inclusive = [adj | {node} for node, adj in enumerate(graph.adjacency)]
    index = {edge: i for i, edge in enumerate(graph.edges)}
    incident: List[List[int]] = [[] for _ in range(graph.n)]
    for u, v in graph.edges:
        incident[u].append(v)
        incident[v].append(u)

    similarity = np.zeros((graph.m, graph.m))
    for keystone in range(graph.n):
        for i, j in combinations(sorted(incident[keystone]), 2):
            a = index[(min(keystone, i), max(keystone, i))]
            b = index[(min(keystone, j), max(keystone, j))]
            shared = len(inclusive[i] & inclusive[j])
            value = shared / len(inclusive[i] | inclusive[j])
            similarity[a, b] = similarity[b, a] = value
    return similarity


def partition_density(graph: Graph, edge_labels: np.ndarray) -> float:
    """Mean over edge clusters of m_c (m_c - n_c + 1) / ((n_c - 2)(n_c - 1)),
    weighted by 2 / M."""
    clusters: Dict[int, List[int]] = {}
    for edge, label in enumerate(edge_labels):
        clusters.setdefault(int(label), []).append(edge)
    total = 0.0
    for members in clusters.values():
        m_c = len(members)
        n_c = len({node for e in members for node in graph.edges[e]})
        if n_c > 2:
            total += m_c * (m_c - (n_c - 1)) / ((n_c - 2) * (n_c - 1))
    return 2.0 * total / graph.m


def hlc(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Link clustering.

    Edges are merged by single linkage on 1 - edge similarity; the
    dendrogram is cut at the height with the largest partition density,
    considering only heights below 1 so that unrelated edges stay apart.
    Each edge cluster induces the community of its endpoints.
    """
    if graph.m == 0:
        return Cover.from_labels(list(range(graph.n)))
    if graph.m == 1:
        return Cover.from_communities([graph.edges[0]], graph.n)

    distance = 1.0 - edge_similarity(graph)
    np.fill_diagonal(distance, 0.0)
    tree = linkage(squareform(distance, checks=False), method="single")

    best_labels = np.arange(graph.m)
    best_density = partition_density(graph, best_labels)
    for height in np.unique(tree[:, 2]):
        if height >= 1.0:
            break
        labels = fcluster(tree, t=height, criterion="distance")
        density = partition_density(graph, labels)
        if density > best_density:
            best_density, best_labels = density, labels

    clusters: Dict[int, set] = {}
    for edge, label in enumerate(best_labels):
        clusters.setdefault(int(label), set()).update(graph.edges[edge])
    communities = unique_communities(sorted(sorted(c) for c in clusters.values()))
    return Cover.from_communities(communities, graph.n)
