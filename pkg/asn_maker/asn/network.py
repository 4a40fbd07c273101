"""The Algorithm Similarity Network (ASN) value type and its CSV form."""

from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Dict, Iterable, List, Mapping, Optional, Tuple, Union

import numpy as np
import pandas as pd

from asn_maker.graph.model import Graph

Pair = Tuple[str, str]
COLUMNS = ["src_id", "dst_id", "weight", "nc_score"]


def pair(a: str, b: str) -> Pair:
    """Unordered pair key."""
    if a == b:
        raise ValueError(f"self-pair {a!r}")
    return (a, b) if a < b else (b, a)


@dataclass(frozen=True)
class AsnNet:
    """Weighted undirected network over algorithm ids.

    Attributes:
        nodes: Sorted algorithm ids
        weights: Non-negative weight per unordered pair
        scores: Noise-corrected score per pair, once computed
        delta: Score threshold the network was backboned with
    """

    nodes: Tuple[str, ...]
    weights: Mapping[Pair, float] = field(default_factory=dict)
    scores: Optional[Mapping[Pair, float]] = None
    delta: Optional[float] = None

    def __post_init__(self) -> None:
        known = set(self.nodes)
        if list(self.nodes) != sorted(known):
            raise ValueError("nodes must be sorted and unique")
        for (a, b), w in self.weights.items():
            if not (a < b and a in known and b in known):
                raise ValueError(f"pair ({a}, {b}) is not a canonical pair of known nodes")
            if w < 0:
                raise ValueError(f"negative weight on ({a}, {b})")

    @classmethod
    def from_weights(
        cls, weights: Mapping[Tuple[str, str], float], nodes: Iterable[str] = ()
    ) -> "AsnNet":
        canonical = {pair(a, b): float(w) for (a, b), w in weights.items()}
        names = set(nodes) | {v for p in canonical for v in p}
        return cls(tuple(sorted(names)), dict(sorted(canonical.items())))

    def weight(self, a: str, b: str) -> float:
        return self.weights.get(pair(a, b), 0.0)

    def score(self, a: str, b: str) -> Optional[float]:
        if self.scores is None:
            return None
        return self.scores.get(pair(a, b))

    @property
    def edges(self) -> List[Pair]:
        """Pairs with positive weight, sorted."""
        return sorted(p for p, w in self.weights.items() if w > 0)

    def strengths(self) -> Dict[str, float]:
        strength = {node: 0.0 for node in self.nodes}
        for (a, b), w in self.weights.items():
            strength[a] += w
            strength[b] += w
        return strength

    def degrees(self) -> Dict[str, int]:
        degree = {node: 0 for node in self.nodes}
        for a, b in self.edges:
            degree[a] += 1
            degree[b] += 1
        return degree

    def isolated(self) -> List[str]:
        return [node for node, d in self.degrees().items() if d == 0]

    def induced(self, nodes: Iterable[str]) -> "AsnNet":
        """Plain induced subgraph, keeping weights, scores and delta."""
        keep = set(nodes)
        weights = {p: w for p, w in self.weights.items() if p[0] in keep and p[1] in keep}
        scores = None
        if self.scores is not None:
            scores = {p: s for p, s in self.scores.items() if p in weights}
        return replace(
            self, nodes=tuple(n for n in self.nodes if n in keep), weights=weights, scores=scores
        )

    def index(self) -> Dict[str, int]:
        return {node: i for i, node in enumerate(self.nodes)}

    def to_graph(self) -> Graph:
        """Weighted Graph over node indices, labelled with the algorithm ids;
        zero-weight pairs are dropped."""
        index = self.index()
        weights = {(index[a], index[b]): w for (a, b), w in self.weights.items() if w > 0}
        return Graph.from_edges(len(self.nodes), weights.keys(), weights, labels=self.nodes)

    def weight_vector(self, pairs: Iterable[Pair]) -> np.ndarray:
        return np.array([self.weights.get(p, 0.0) for p in pairs], dtype=float)


def write_asn(net: AsnNet, path: Union[str, Path]) -> Path:
    """Write positive-weight edges as CSV: src_id, dst_id, weight, nc_score."""
    rows = [
        {"src_id": a, "dst_id": b, "weight": net.weights[(a, b)], "nc_score": net.score(a, b)}
        for a, b in net.edges
    ]
    path = Path(path)
    pd.DataFrame(rows, columns=COLUMNS).to_csv(path, index=False, float_format="%.10g")
    return path


def read_asn(path: Union[str, Path], nodes: Iterable[str] = ()) -> AsnNet:
    """Read an ASN CSV; nodes without edges can be supplied separately."""
    frame = pd.read_csv(path, dtype={"src_id": str, "dst_id": str})
    weights = {
        pair(a, b): float(w) for a, b, w in zip(frame["src_id"], frame["dst_id"], frame["weight"])
    }
    net = AsnNet.from_weights(weights, nodes)
    if frame["nc_score"].notna().any():
        scores = {
            pair(a, b): float(s)
            for a, b, s in zip(frame["src_id"], frame["dst_id"], frame["nc_score"])
        }
        net = replace(net, scores=scores)
    return net
