"""Two-level map equation for undirected (weighted) graphs.

For an undirected graph the random walker visits node i at rate
p_i = s_i / 2W and leaves module c at rate q_c = (boundary weight of c) / 2W.
The description length in bits per step is

    L = plogp(q) - 2 sum_c plogp(q_c) - sum_i plogp(p_i) + sum_c plogp(q_c + p_c)

with q = sum_c q_c, p_c = sum_{i in c} p_i and plogp(x) = x log2 x.
"""

import numpy as np

from asn_maker.core.errors import ContractError
from asn_maker.graph.model import Cover, Graph


def plogp(x) -> np.ndarray:
    """Elementwise x log2 x with 0 log 0 = 0."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    positive = x > 0
    out[positive] = x[positive] * np.log2(x[positive])
    return out


def codelength_from_flows(
    exit_flows: np.ndarray, module_flows: np.ndarray, node_entropy_term: float
) -> float:
    """Map equation value from module exit and visit rates.

    Args:
        exit_flows: q_c per module
        module_flows: p_c per module
        node_entropy_term: sum_i plogp(p_i)
    """
    q = float(exit_flows.sum())
    return float(
        plogp(q)
        - 2.0 * plogp(exit_flows).sum()
        - node_entropy_term
        + plogp(exit_flows + module_flows).sum()
    )


def map_codelength(graph: Graph, partition: Cover) -> float:
    """Bits per step needed to describe a random walk given the modules.

    Raises:
        ValueError: If the graph has no edges
        ContractError: If the cover is not a partition
    """
    if graph.m == 0:
        raise ValueError("map equation is undefined on a graph without edges")
    if not partition.is_partition():
        raise ContractError("map_codelength needs a partition")

    strengths = graph.strengths
    total = strengths.sum()
    node_flow = strengths / total
    labels = partition.labels_vector()
    modules = len(partition)

    module_flow = np.bincount(labels, weights=node_flow, minlength=modules)
    boundary = np.zeros(modules)
    for i, (u, v) in enumerate(graph.edges):
        if labels[u] != labels[v]:
            w = 1.0 if graph.weights is None else graph.weights[i]
            boundary[labels[u]] += w
            boundary[labels[v]] += w
    exit_flow = boundary / total

    return codelength_from_flows(exit_flow, module_flow, float(plogp(node_flow).sum()))


def one_module_codelength(graph: Graph) -> float:
    """Codelength with every node in a single module."""
    return map_codelength(graph, Cover.from_communities([range(graph.n)], graph.n))


def singleton_codelength(graph: Graph) -> float:
    """Codelength with every node in its own module."""
    return map_codelength(graph, Cover.from_labels(list(range(graph.n))))
