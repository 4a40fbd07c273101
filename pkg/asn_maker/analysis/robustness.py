"""Robustness comparisons between ASN variants and summary statistics of
an ASN."""

from itertools import combinations
from typing import Dict, Iterable, Mapping, Optional, Sequence

import networkx as nx
import numpy as np
from scipy.stats import pearsonr

from asn_maker.analysis.clustering import AsnClustering, cluster_asn
from asn_maker.asn.backbone import backbone, nc_score, select_delta
from asn_maker.asn.build import accumulate, aggregate_average, aggregate_threshold
from asn_maker.asn.network import AsnNet
from asn_maker.asn.similarity import SimilarityStore
from asn_maker.core.errors import ContractError, DisconnectedPairError
from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover
from asn_maker.metrics.graph_stats import avg_path_length, transitivity
from asn_maker.metrics.onmi import onmi

logger = get_logger("analysis.robustness")


def weight_correlation(a: AsnNet, b: AsnNet) -> float:
    """Pearson correlation of the weights of two ASNs over the pairs
    weighted in either one (zero where absent).

    Identical uniform weights correlate perfectly.

    Raises:
        ValueError: If the node sets differ or fewer than two pairs remain
        ContractError: If one network has uniform weights and the other differs
    """
    if set(a.nodes) != set(b.nodes):
        raise ValueError("weight correlation needs networks over the same algorithms")
    pairs = sorted(
        {p for p, w in a.weights.items() if w > 0} | {p for p, w in b.weights.items() if w > 0}
    )
    if len(pairs) < 2:
        raise ValueError("weight correlation needs at least two weighted pairs")
    x, y = a.weight_vector(pairs), b.weight_vector(pairs)
    if np.ptp(x) == 0 or np.ptp(y) == 0:
        if np.array_equal(x, y):
            return 1.0
        raise ContractError("weight correlation is undefined for uniform weights")
    result = pearsonr(x, y)
    return float(result[0])


def partition_agreement(
    a: Sequence[Sequence[str]], b: Sequence[Sequence[str]], nodes: Sequence[str]
) -> float:
    """oNMI (MAX) between two clusterings of the same algorithms."""
    index = {node: i for i, node in enumerate(nodes)}
    cover_a = Cover.from_communities([[index[x] for x in c] for c in a], len(nodes))
    cover_b = Cover.from_communities([[index[x] for x in c] for c in b], len(nodes))
    return onmi(cover_a, cover_b, "MAX")


def sub_asn(store: SimilarityStore, algorithms: Iterable[str], k: int = 5) -> AsnNet:
    """Rebuild and score the ASN from scratch over an algorithm subset.

    Raises:
        ValueError: If fewer than two algorithms are given
        ContractError: If an algorithm appears in no matrix
    """
    subset = sorted(set(algorithms))
    if len(subset) < 2:
        raise ValueError("a sub-ASN needs at least two algorithms")
    known = set(store.algorithms)
    missing = [a for a in subset if a not in known]
    if missing:
        raise ContractError(f"algorithm '{missing[0]}' is absent from every network")
    return nc_score(accumulate(store.restrict(subset), k))


def variant_correlations(nets: Mapping[str, AsnNet]) -> Dict[str, float]:
    """Weight correlation for every pair of oNMI variants, e.g. 'MAX vs LFK'."""
    names = sorted(nets)
    return {
        f"{x} vs {y}": weight_correlation(nets[x], nets[y]) for x, y in combinations(names, 2)
    }


def synthetic_vs_real_correlation(store: SimilarityStore, k: int = 5) -> float:
    """Weight correlation of the ASNs built from synthetic and real networks.

    Raises:
        ContractError: If the store lacks either kind
    """
    synthetic, real = store.by_kind("synthetic"), store.by_kind("real")
    if not len(synthetic) or not len(real):
        raise ContractError("need both synthetic and real networks")
    a, b = accumulate(synthetic, k), accumulate(real, k)
    nodes = sorted(set(a.nodes) & set(b.nodes))
    return weight_correlation(a.induced(nodes), b.induced(nodes))


def auto_backbone(net: AsnNet) -> AsnNet:
    """Score the network, drop nodes without edges, and backbone at the
    automatically selected threshold."""
    scored = nc_score(net)
    isolated = scored.isolated()
    if isolated:
        logger.warning("Dropping %d algorithm(s) without ASN edges", len(isolated))
        scored = scored.induced(n for n in scored.nodes if n not in isolated)
    return backbone(scored, select_delta(scored))


def aggregation_agreement(
    store: SimilarityStore,
    reference: AsnClustering,
    k: int = 5,
    tau: float = 0.5,
    clusterer: str = "infomap_2l",
    seed: int = 0,
) -> Dict[str, float]:
    """Agreement between the reference clustering and the clusterings of the
    averaged and thresholded ASNs, each backboned the same way."""
    alternatives = {
        "average": aggregate_average(store),
        "threshold": aggregate_threshold(store, tau),
    }
    agreement = {}
    for name, net in alternatives.items():
        try:
            clustering = cluster_asn(auto_backbone(net), clusterer, seed)
        except (ValueError, ContractError) as e:
            logger.warning("Skipping %s aggregation: %s", name, e)
            continue
        nodes = sorted(set(reference.nodes) & set(clustering.nodes))
        agreement[name] = partition_agreement(
            _restrict(reference, nodes), _restrict(clustering, nodes), nodes
        )
    return agreement


def _restrict(clustering: AsnClustering, nodes: Sequence[str]):
    keep = set(nodes)
    return [[a for a in c if a in keep] for c in clustering.communities]


def asn_statistics(
    net: AsnNet, clustering: Optional[AsnClustering] = None
) -> Dict[str, Optional[float]]:
    """Size, density, transitivity, codelengths and average path length."""
    graph = net.to_graph()
    n = graph.n
    summary: Dict[str, Optional[float]] = {
        "nodes": n,
        "edges": graph.m,
        "density": graph.m / (n * (n - 1) / 2) if n > 1 else 0.0,
        "transitivity": transitivity(graph),
        "components": nx.number_connected_components(graph.to_networkx()),
        "mean_weight": float(np.mean([w for w in net.weights.values() if w > 0]))
        if graph.m
        else 0.0,
        "delta": net.delta,
    }
    try:
        summary["avg_path_length"] = avg_path_length(graph) if n > 1 else None
    except DisconnectedPairError:
        summary["avg_path_length"] = None
    if clustering is not None:
        summary["asn_communities"] = len(clustering.cover)
        summary["codelength_one_module"] = clustering.codelength_one_module
        summary["codelength_singletons"] = clustering.codelength_singletons
        summary["codelength"] = clustering.codelength
    return summary
