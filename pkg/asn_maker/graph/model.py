"""Graph and cover data model.

Graphs are undirected simple graphs with dense integer node ids and
optional positive edge weights. Covers are sequences of node sets over a
graph's node range; a partition is a disjoint, exhaustive cover. Both
types are immutable and may be shared freely between workers.
"""

import hashlib
from dataclasses import dataclass, field
from functools import cached_property
from typing import Dict, FrozenSet, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx
import numpy as np

from asn_maker.core.errors import CoverRangeError, GraphFormatError

Edge = Tuple[int, int]


def _canonical_edge(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """An undirected simple graph over nodes 0..n-1.

    Attributes:
        n: Node count
        edges: Sorted tuple of (u, v) pairs with u < v
        weights: Edge weights aligned with edges, or None when unweighted
        labels: Original node labels, labels[i] names dense id i
    """

    n: int
    edges: Tuple[Edge, ...]
    weights: Optional[Tuple[float, ...]] = None
    labels: Optional[Tuple[str, ...]] = None

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphFormatError("node count must be non-negative")
        seen = set()
        for u, v in self.edges:
            if u == v:
                raise GraphFormatError(f"self-loop on node {u}")
            if not (0 <= u < v < self.n):
                raise GraphFormatError(f"edge ({u}, {v}) is not canonical for n={self.n}")
            if (u, v) in seen:
                raise GraphFormatError(f"duplicate edge ({u}, {v})")
            seen.add((u, v))
        if self.weights is not None:
            if len(self.weights) != len(self.edges):
                raise GraphFormatError("weights must align with edges")
            if any(w <= 0 for w in self.weights):
                raise GraphFormatError("edge weights must be strictly positive")
        if self.labels is not None and len(self.labels) != self.n:
            raise GraphFormatError("labels must name every node")

    @classmethod
    def from_edges(
        cls,
        n: int,
        edges: Iterable[Tuple[int, int]],
        weights: Optional[Mapping[Edge, float]] = None,
        labels: Optional[Sequence[str]] = None,
    ) -> "Graph":
        """Build a graph from any iterable of node pairs.

        Pairs are canonicalized and sorted; weights are looked up by the
        canonical pair.
        """
        canonical = sorted({_canonical_edge(u, v) for u, v in edges})
        edge_weights = None
        if weights is not None:
            lookup = {_canonical_edge(u, v): w for (u, v), w in weights.items()}
            edge_weights = tuple(float(lookup[e]) for e in canonical)
        return cls(
            n=n,
            edges=tuple(canonical),
            weights=edge_weights,
            labels=tuple(labels) if labels is not None else None,
        )

    @property
    def m(self) -> int:
        """Number of edges."""
        return len(self.edges)

    @property
    def is_weighted(self) -> bool:
        return self.weights is not None

    def weight(self, u: int, v: int) -> float:
        """Weight of edge (u, v); 1 when the graph is unweighted."""
        if self.weights is None:
            return 1.0
        return self.weights[self._edge_index[_canonical_edge(u, v)]]

    @cached_property
    def _edge_index(self) -> Dict[Edge, int]:
        return {e: i for i, e in enumerate(self.edges)}

    @cached_property
    def adjacency(self) -> Tuple[FrozenSet[int], ...]:
        """Neighbor sets indexed by node id."""
        neighbors: List[set] = [set() for _ in range(self.n)]
        for u, v in self.edges:
            neighbors[u].add(v)
            neighbors[v].add(u)
        return tuple(frozenset(s) for s in neighbors)

    @cached_property
    def degrees(self) -> np.ndarray:
        """Unweighted degree of every node."""
        return np.array([len(s) for s in self.adjacency], dtype=np.int64)

    @cached_property
    def strengths(self) -> np.ndarray:
        """Weighted degree of every node."""
        strength = np.zeros(self.n, dtype=float)
        for i, (u, v) in enumerate(self.edges):
            w = 1.0 if self.weights is None else self.weights[i]
            strength[u] += w
            strength[v] += w
        return strength

    def label(self, node: int) -> str:
        """Original label of a node (its id when the graph has no labels)."""
        return self.labels[node] if self.labels is not None else str(node)

    def to_networkx(self) -> nx.Graph:
        """A frozen networkx view with every node and a 'weight' attribute."""
        return self._nx_graph

    @cached_property
    def _nx_graph(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.n))
        if self.weights is None:
            g.add_edges_from(self.edges, weight=1.0)
        else:
            g.add_weighted_edges_from(
                (u, v, w) for (u, v), w in zip(self.edges, self.weights)
            )
        return nx.freeze(g)

    def canonical_text(self) -> str:
        """Canonical edge-list serialization: sorted edges, weights if any."""
        lines = []
        for i, (u, v) in enumerate(self.edges):
            if self.weights is None:
                lines.append(f"{u} {v}")
            else:
                lines.append(f"{u} {v} {self.weights[i]!r}")
        header = f"# nodes {self.n}"
        return "\n".join([header] + lines) + "\n"

    def digest(self) -> str:
        """SHA-256 of the canonical serialization."""
        return hashlib.sha256(self.canonical_text().encode("utf-8")).hexdigest()


@dataclass(frozen=True)
class Cover:
    """A possibly overlapping set of communities over nodes 0..n-1.

    Attributes:
        communities: Tuple of non-empty frozensets of node ids
        n: Node count of the underlying graph
    """

    communities: Tuple[FrozenSet[int], ...]
    n: int
    _memberships: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        counts = np.zeros(self.n, dtype=np.int64)
        for community in self.communities:
            if not community:
                raise CoverRangeError("communities must be non-empty")
            for node in community:
                if not 0 <= node < self.n:
                    raise CoverRangeError(f"node id {node} outside 0..{self.n - 1}")
                counts[node] += 1
        if np.any(counts == 0):
            missing = int(np.flatnonzero(counts == 0)[0])
            raise CoverRangeError(f"node {missing} belongs to no community")
        object.__setattr__(self, "_memberships", counts)

    @classmethod
    def from_communities(
        cls, communities: Iterable[Iterable[int]], n: int, complete: bool = True
    ) -> "Cover":
        """Build a cover, turning uncovered nodes into singletons.

        Args:
            communities: Node-id collections; empty ones are dropped
            n: Node count
            complete: Append singleton communities for uncovered nodes
        """
        sets = [frozenset(int(v) for v in c) for c in communities]
        sets = [s for s in sets if s]
        if complete:
            covered = set().union(*sets) if sets else set()
            sets.extend(frozenset([v]) for v in range(n) if v not in covered)
        return cls(communities=tuple(sets), n=n)

    @classmethod
    def from_labels(cls, labels: Sequence[int]) -> "Cover":
        """Partition from a node -> community label vector."""
        groups: Dict[int, List[int]] = {}
        for node, label in enumerate(labels):
            groups.setdefault(int(label), []).append(node)
        return cls.from_communities(groups.values(), len(labels))

    def __len__(self) -> int:
        return len(self.communities)

    def __iter__(self):
        return iter(self.communities)

    @property
    def memberships(self) -> np.ndarray:
        """Membership count s_i of every node."""
        return self._memberships.copy()

    def is_partition(self) -> bool:
        """True when communities are pairwise disjoint and exhaustive."""
        return bool(np.all(self._memberships == 1))

    def canonical(self) -> Tuple[Tuple[int, ...], ...]:
        """Communities as sorted tuples, ordered by smallest member."""
        return tuple(sorted(tuple(sorted(c)) for c in self.communities))

    def indicator_matrix(self) -> np.ndarray:
        """Boolean (communities x nodes) membership matrix."""
        matrix = np.zeros((len(self.communities), self.n), dtype=bool)
        for k, community in enumerate(self.communities):
            matrix[k, list(community)] = True
        return matrix

    def labels_vector(self) -> np.ndarray:
        """Community index of every node; only defined for partitions."""
        if not self.is_partition():
            raise ValueError("labels_vector requires a partition")
        vector = np.empty(self.n, dtype=np.int64)
        for k, community in enumerate(self.communities):
            vector[list(community)] = k
        return vector


def is_partition(cover: Cover) -> bool:
    """True when the cover is disjoint and covers every node exactly once."""
    return cover.is_partition()


def split_by_components(graph: Graph, cover: Cover) -> Cover:
    """Split communities that span several connected components.

    Agglomerative detectors may join nodes with no path between them; each
    such community is replaced by its per-component pieces.
    """
    component_of = np.empty(graph.n, dtype=np.int64)
    for index, component in enumerate(nx.connected_components(graph.to_networkx())):
        component_of[list(component)] = index
    pieces: List[FrozenSet[int]] = []
    for community in cover.communities:
        groups: Dict[int, set] = {}
        for node in community:
            groups.setdefault(int(component_of[node]), set()).add(node)
        pieces.extend(frozenset(g) for g in groups.values())
    return Cover.from_communities(_unique(pieces), graph.n)


def _unique(communities: Iterable[FrozenSet[int]]) -> List[FrozenSet[int]]:
    seen = set()
    result = []
    for community in communities:
        if community not in seen:
            seen.add(community)
            result.append(community)
    return result


def unique_communities(communities: Iterable[Iterable[int]]) -> List[FrozenSet[int]]:
    """Drop duplicate communities, keeping first occurrences in order."""
    return _unique(frozenset(c) for c in communities)
