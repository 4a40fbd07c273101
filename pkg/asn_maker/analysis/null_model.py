"""Average-path-length null model for node subsets of a network."""

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, List, Sequence

import numpy as np

from asn_maker.core.errors import ContractError
from asn_maker.graph.model import Graph
from asn_maker.metrics.graph_stats import avg_path_length, same_component

MAX_RESAMPLES = 1000


@dataclass(frozen=True)
class NullModelResult:
    """Observed statistic against its null samples.

    ``p_value`` is the share of samples at or below the observed value.
    """

    observed: float
    samples: Sequence[float]
    p_value: float
    trials: int
    seed: int
    resamples: int = 0

    @property
    def mean(self) -> float:
        return float(np.mean(self.samples))


def _subset_size(graph: Graph, nodes: Sequence[int]) -> int:
    size = len(set(nodes))
    if size > graph.n:
        raise ValueError(f"subset of {size} nodes exceeds the {graph.n} nodes of the network")
    return size


def apl_null_model(
    graph: Graph, nodes: Iterable[int], trials: int = 1000, seed: int = 0
) -> NullModelResult:
    """Compare a subset's average path length with random subsets of the
    same size.

    Trial t draws with numpy.random.default_rng(seed + t), resampling until
    the subset lies in one connected component.

    Raises:
        ValueError: If the subset is larger than the network or trials < 1
        DisconnectedPairError: If the subset itself is disconnected
        ContractError: If a trial finds no connected subset in MAX_RESAMPLES draws
    """
    nodes = sorted(set(nodes))
    size = _subset_size(graph, nodes)
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    observed = avg_path_length(graph, nodes)

    samples: List[float] = []
    resamples = 0
    for trial in range(trials):
        rng = np.random.default_rng(seed + trial)
        for _ in range(MAX_RESAMPLES):
            subset = rng.choice(graph.n, size=size, replace=False)
            if same_component(graph, subset):
                break
            resamples += 1
        else:
            raise ContractError(
                f"no connected subset of {size} nodes in {MAX_RESAMPLES} draws"
            )
        samples.append(avg_path_length(graph, subset.tolist()))

    below = sum(1 for s in samples if s <= observed)
    return NullModelResult(observed, tuple(samples), below / trials, trials, seed, resamples)


def apl_exact_null(graph: Graph, size: int, observed: float) -> float:
    """Exact one-sided p over every connected subset of the given size."""
    if size > graph.n:
        raise ValueError(f"subset of {size} nodes exceeds the {graph.n} nodes of the network")
    total = below = 0
    for subset in combinations(range(graph.n), size):
        if not same_component(graph, subset):
            continue
        total += 1
        if avg_path_length(graph, subset) <= observed:
            below += 1
    if total == 0:
        raise ContractError(f"no connected subset of {size} nodes")
    return below / total
