"""Label-spreading detectors: asynchronous label propagation and SLPA."""

from collections import Counter
from typing import Dict, List, Mapping

import numpy as np

from asn_maker.core.errors import AlgorithmError
from asn_maker.graph.model import Cover, Graph

MAX_SWEEPS = 100


def _neighbor_weights(graph: Graph) -> List[Dict[int, float]]:
    weights: List[Dict[int, float]] = [{} for _ in range(graph.n)]
    for i, (u, v) in enumerate(graph.edges):
        w = 1.0 if graph.weights is None else graph.weights[i]
        weights[u][v] = w
        weights[v][u] = w
    return weights


def labelprop(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Asynchronous majority label propagation.

    Each sweep visits nodes in random order; a node adopts the label with
    the largest incident weight, keeping its own label when it is among the
    maxima. Stops when a sweep changes nothing.

    Raises:
        AlgorithmError: If labels still change after MAX_SWEEPS sweeps
    """
    rng = np.random.default_rng(seed)
    neighbors = _neighbor_weights(graph)
    labels = np.arange(graph.n)

    for _ in range(MAX_SWEEPS):
        changed = False
        for node in rng.permutation(graph.n):
            if not neighbors[node]:
                continue
            tally: Dict[int, float] = {}
            for other, w in neighbors[node].items():
                tally[labels[other]] = tally.get(labels[other], 0.0) + w
            best = max(tally.values())
            candidates = sorted(label for label, w in tally.items() if w == best)
            if labels[node] in candidates:
                continue
            labels[node] = candidates[int(rng.integers(len(candidates)))]
            changed = True
        if not changed:
            return Cover.from_labels(labels)
    raise AlgorithmError(f"labelprop did not converge in {MAX_SWEEPS} sweeps")


def slpa(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Speaker-listener label propagation.

    Every node keeps a memory of heard labels. In each of ``iterations``
    sweeps a listener hears one label from each neighbor, drawn in
    proportion to that neighbor's memory, and stores the most frequent one.
    Labels held with frequency at least ``r`` define the communities;
    communities contained in another one are dropped.

    Params:
        r: Post-processing threshold in (0, 1]
        iterations: Number of sweeps, at most MAX_SWEEPS
    """
    r = float(params.get("r", 0.3))
    iterations = int(params.get("iterations", MAX_SWEEPS))
    if not 0 < r <= 1:
        raise AlgorithmError(f"slpa threshold r={r} outside (0, 1]")
    if not 1 <= iterations <= MAX_SWEEPS:
        raise AlgorithmError(f"slpa iterations={iterations} outside 1..{MAX_SWEEPS}")

    rng = np.random.default_rng(seed)
    neighbors = [sorted(s) for s in graph.adjacency]
    memory: List[Counter] = [Counter({node: 1}) for node in range(graph.n)]

    for _ in range(iterations):
        for listener in rng.permutation(graph.n):
            if not neighbors[listener]:
                continue
            heard: Counter = Counter()
            for speaker in neighbors[listener]:
                labels = sorted(memory[speaker])
                counts = np.array([memory[speaker][label] for label in labels], dtype=float)
                heard[labels[int(rng.choice(len(labels), p=counts / counts.sum()))]] += 1
            top = max(heard.values())
            popular = sorted(label for label, c in heard.items() if c == top)
            memory[listener][popular[int(rng.integers(len(popular)))]] += 1

    groups: Dict[int, set] = {}
    for node, counts in enumerate(memory):
        total = sum(counts.values())
        for label, count in counts.items():
            if count / total >= r:
                groups.setdefault(label, set()).add(node)

    communities = sorted({frozenset(g) for g in groups.values()}, key=sorted)
    maximal = [c for c in communities if not any(c < other for other in communities)]
    return Cover.from_communities(maximal, graph.n)
