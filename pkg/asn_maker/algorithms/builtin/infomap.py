"""Two-level map equation minimization.

Nodes are moved greedily between neighboring modules to lower the
codelength, then modules are merged into super-nodes and the procedure is
repeated on the aggregated graph until no move helps. Flow terms follow
asn_maker.metrics.mapequation; the node entropy term is constant during
optimization and is left out of the move deltas.
"""

from typing import Dict, List, Mapping, Tuple

import numpy as np

from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover, Graph
from asn_maker.metrics.mapequation import plogp

logger = get_logger("algorithms.infomap")

MAX_SWEEPS = 100
MAX_LEVELS = 32
TOLERANCE = 1e-10


def _f(x: float) -> float:
    return float(plogp(x))


class _Level:
    """Super-node graph with module bookkeeping."""

    def __init__(
        self,
        volume: np.ndarray,
        self_weight: np.ndarray,
        links: List[Dict[int, float]],
        total: float,
    ) -> None:
        self.volume = volume
        self.self_weight = self_weight
        self.links = links
        self.total = total
        size = len(volume)
        self.module = np.arange(size)
        self.module_volume = volume.astype(float).copy()
        self.module_internal = self_weight.astype(float).copy()
        self.exit_sum = float(sum(self._exit(c) for c in range(size)))

    def _exit(self, module: int) -> float:
        return (self.module_volume[module] - 2.0 * self.module_internal[module]) / self.total

    def _module_terms(self, volume: float, internal: float) -> Tuple[float, float]:
        exit_flow = (volume - 2.0 * internal) / self.total
        return exit_flow, -2.0 * _f(exit_flow) + _f(exit_flow + volume / self.total)

    def _delta(self, node: int, target: int, to_target: float, to_own: float) -> float:
        own = self.module[node]
        vol, loop = self.volume[node], self.self_weight[node]

        old_own_exit, old_own = self._module_terms(
            self.module_volume[own], self.module_internal[own]
        )
        old_target_exit, old_target = self._module_terms(
            self.module_volume[target], self.module_internal[target]
        )
        new_own_exit, new_own = self._module_terms(
            self.module_volume[own] - vol, self.module_internal[own] - to_own - loop
        )
        new_target_exit, new_target = self._module_terms(
            self.module_volume[target] + vol, self.module_internal[target] + to_target + loop
        )
        new_exit_sum = (
            self.exit_sum - old_own_exit - old_target_exit + new_own_exit + new_target_exit
        )
        return (
            _f(new_exit_sum)
            - _f(self.exit_sum)
            + new_own
            + new_target
            - old_own
            - old_target
        )

    def _apply(self, node: int, target: int, to_target: float, to_own: float) -> None:
        own = self.module[node]
        vol, loop = self.volume[node], self.self_weight[node]
        self.exit_sum -= self._exit(own) + self._exit(target)
        self.module_volume[own] -= vol
        self.module_internal[own] -= to_own + loop
        self.module_volume[target] += vol
        self.module_internal[target] += to_target + loop
        self.exit_sum += self._exit(own) + self._exit(target)
        self.module[node] = target

    def move_nodes(self, rng: np.random.Generator) -> bool:
        """Greedy local moves; True if any node changed module."""
        moved_any = False
        for _ in range(MAX_SWEEPS):
            moved = False
            for node in rng.permutation(len(self.volume)):
                weights: Dict[int, float] = {}
                for other, w in self.links[node].items():
                    weights[self.module[other]] = weights.get(self.module[other], 0.0) + w
                own = self.module[node]
                to_own = weights.get(own, 0.0)
                best, best_delta = own, -TOLERANCE
                for target in sorted(weights):
                    if target == own:
                        continue
                    delta = self._delta(node, target, weights[target], to_own)
                    if delta < best_delta:
                        best, best_delta = target, delta
                if best != own:
                    self._apply(node, best, weights[best], to_own)
                    moved = True
            if not moved:
                break
            moved_any = True
        return moved_any

    def aggregate(self) -> Tuple["_Level", np.ndarray]:
        """Collapse modules into super-nodes; also return node -> super-node."""
        used = np.unique(self.module)
        index = {int(m): i for i, m in enumerate(used)}
        mapping = np.array([index[int(m)] for m in self.module])
        size = len(used)
        volume = np.zeros(size)
        self_weight = np.zeros(size)
        links: List[Dict[int, float]] = [{} for _ in range(size)]
        for node in range(len(self.volume)):
            a = mapping[node]
            volume[a] += self.volume[node]
            self_weight[a] += self.self_weight[node]
            for other, w in self.links[node].items():
                b = mapping[other]
                if a == b:
                    if node < other:
                        self_weight[a] += w
                else:
                    links[a][b] = links[a].get(b, 0.0) + w
        return _Level(volume, self_weight, links, self.total), mapping


def infomap_2l(graph: Graph, params: Mapping[str, object], seed: int) -> Cover:
    """Two-level partition minimizing the map equation; singletons on a graph
    without edges."""
    if graph.m == 0:
        return Cover.from_labels(list(range(graph.n)))

    rng = np.random.default_rng(seed)
    links: List[Dict[int, float]] = [{} for _ in range(graph.n)]
    for i, (u, v) in enumerate(graph.edges):
        w = 1.0 if graph.weights is None else graph.weights[i]
        links[u][v] = w
        links[v][u] = w
    strengths = graph.strengths
    level = _Level(strengths.copy(), np.zeros(graph.n), links, float(strengths.sum()))

    assignment = np.arange(graph.n)
    for depth in range(MAX_LEVELS):
        if not level.move_nodes(rng):
            break
        level, mapping = level.aggregate()
        assignment = mapping[assignment]
        logger.debug("infomap level %d: %d modules", depth, len(level.volume))
    return Cover.from_labels(assignment)
