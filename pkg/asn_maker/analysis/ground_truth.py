"""Ranking of detectors by agreement with the planted communities."""

import pandas as pd
from scipy.stats import rankdata

from asn_maker.asn.network import AsnNet
from asn_maker.asn.similarity import GROUND_TRUTH
from asn_maker.core.errors import ContractError
from asn_maker.core.logging import get_logger

logger = get_logger("analysis.ground_truth")


def ground_truth_ranking(net: AsnNet, ground_truth: str = GROUND_TRUTH) -> pd.DataFrame:
    """Algorithms by their ASN weight to the ground-truth node.

    Rows are sorted by descending weight, then algorithm id; tied weights
    share the smallest rank. Zero weights are left out.

    Raises:
        ContractError: If the network has no ground-truth node
    """
    if ground_truth not in net.nodes:
        raise ContractError(f"ASN has no '{ground_truth}' node")
    rows = [
        (node, net.weight(node, ground_truth))
        for node in net.nodes
        if node != ground_truth and net.weight(node, ground_truth) > 0
    ]
    if not rows:
        logger.warning("Every algorithm has zero weight to the ground truth")
        return pd.DataFrame(columns=["rank", "algorithm", "weight"])

    frame = pd.DataFrame(rows, columns=["algorithm", "weight"])
    frame = frame.sort_values(["weight", "algorithm"], ascending=[False, True])
    frame.insert(0, "rank", rankdata(-frame["weight"].to_numpy(), method="min").astype(int))
    return frame.reset_index(drop=True)
