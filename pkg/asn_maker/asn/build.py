"""ASN construction from similarity matrices.

The main aggregation counts, for every pair of algorithms, the networks on
which each was among the other's k most similar peers. Averaging and
thresholding are provided as alternatives.
"""

from itertools import combinations
from typing import Dict, Set

import pandas as pd

from asn_maker.asn.network import AsnNet, Pair, pair
from asn_maker.asn.similarity import SimilarityStore


def top_peers(matrix: pd.DataFrame, k: int) -> Dict[str, Set[str]]:
    """Each algorithm's k most similar peers; ties at rank k all included."""
    peers: Dict[str, Set[str]] = {}
    for algorithm in matrix.index:
        row = matrix.loc[algorithm].drop(algorithm)
        if len(row) <= k:
            peers[algorithm] = set(row.index)
            continue
        cutoff = row.sort_values(ascending=False, kind="mergesort").iloc[k - 1]
        peers[algorithm] = set(row.index[row >= cutoff])
    return peers


def mutual_topk(matrix: pd.DataFrame, k: int = 5) -> Set[Pair]:
    """Pairs of algorithms that are each in the other's top k.

    Raises:
        ValueError: If k < 1
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    peers = top_peers(matrix, k)
    return {
        pair(a, b) for a, b in combinations(matrix.index, 2) if b in peers[a] and a in peers[b]
    }


def accumulate(store: SimilarityStore, k: int = 5) -> AsnNet:
    """Count mutual top-k agreements over all networks of the store."""
    counts: Dict[Pair, float] = {}
    for _, matrix in store.items():
        for p in mutual_topk(matrix, k):
            counts[p] = counts.get(p, 0.0) + 1.0
    return AsnNet.from_weights(counts, store.algorithms)


def aggregate_average(store: SimilarityStore) -> AsnNet:
    """Mean similarity of every pair over the networks where both ran."""
    sums: Dict[Pair, float] = {}
    seen: Dict[Pair, int] = {}
    for _, matrix in store.items():
        for a, b in combinations(matrix.index, 2):
            p = pair(a, b)
            sums[p] = sums.get(p, 0.0) + float(matrix.at[a, b])
            seen[p] = seen.get(p, 0) + 1
    return AsnNet.from_weights({p: sums[p] / seen[p] for p in sums}, store.algorithms)


def aggregate_threshold(store: SimilarityStore, tau: float) -> AsnNet:
    """Count networks where a pair's similarity exceeds tau.

    Raises:
        ValueError: If tau lies outside [0, 1]
    """
    if not 0.0 <= tau <= 1.0:
        raise ValueError(f"tau must lie in [0, 1], got {tau}")
    counts: Dict[Pair, float] = {}
    for _, matrix in store.items():
        for a, b in combinations(matrix.index, 2):
            if matrix.at[a, b] > tau:
                p = pair(a, b)
                counts[p] = counts.get(p, 0.0) + 1.0
    return AsnNet.from_weights(counts, store.algorithms)
