"""Noise-corrected backboning.

Each weight is compared with its expectation under a hypergeometric null
that distributes the total weight according to node strengths:

    E[w_ij]   = s_i s_j / T*
    Var[w_ij] = E[w_ij] (1 - s_i / T*) (T* - s_j) / (T* - 1)
    score     = (w_ij - E[w_ij]) / sqrt(Var[w_ij] + 1)

with T* the sum of all strengths. The unit added to the variance keeps
zero-variance pairs finite.
"""

import math
from dataclasses import replace
from typing import Dict

from asn_maker.asn.network import AsnNet, Pair
from asn_maker.core.errors import ContractError
from asn_maker.core.logging import get_logger

logger = get_logger("asn.backbone")

VARIANCE_PRIOR = 1.0


def nc_score(net: AsnNet) -> AsnNet:
    """Score every listed pair of the network.

    Raises:
        ValueError: If the total weight is zero
    """
    total = sum(net.weights.values())
    if total <= 0:
        raise ValueError("noise-corrected scores need a positive total weight")
    strength = net.strengths()
    grand = 2.0 * total
    scores: Dict[Pair, float] = {}
    for (a, b), w in net.weights.items():
        expected = strength[a] * strength[b] / grand
        variance = expected * (1.0 - strength[a] / grand) * (grand - strength[b]) / (grand - 1.0)
        scores[(a, b)] = (w - expected) / math.sqrt(max(variance, 0.0) + VARIANCE_PRIOR)
    return replace(net, scores=scores)


def select_delta(net: AsnNet) -> float:
    """The largest threshold that leaves every node with an edge: the
    minimum over nodes of their best incident score.

    Raises:
        ContractError: If scores are missing or a node has no incident edge
    """
    if net.scores is None:
        raise ContractError("select_delta needs a scored network")
    best: Dict[str, float] = {}
    for (a, b), s in net.scores.items():
        if net.weights.get((a, b), 0.0) <= 0:
            continue
        for node in (a, b):
            best[node] = max(best.get(node, -math.inf), s)
    if not best:
        raise ContractError("select_delta needs at least one weighted pair")
    isolated = [node for node in net.nodes if node not in best]
    if isolated:
        raise ContractError(f"select_delta needs every node connected; isolated: {isolated[0]}")
    return min(best.values())


def backbone(net: AsnNet, delta: float) -> AsnNet:
    """Keep the pairs scoring at least delta; warn when a node is left
    without edges."""
    if net.scores is None:
        raise ContractError("backbone needs a scored network")
    kept = {
        p: w for p, w in net.weights.items() if net.scores.get(p, -math.inf) >= delta
    }
    result = replace(
        net,
        weights=kept,
        scores={p: net.scores[p] for p in kept},
        delta=delta,
    )
    isolated = result.isolated()
    if isolated:
        logger.warning(
            "Backbone at delta=%.4g isolates %d node(s), e.g. %s", delta, len(isolated), isolated[0]
        )
    return result
