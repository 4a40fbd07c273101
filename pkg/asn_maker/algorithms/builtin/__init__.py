"""Catalog of the built-in community detectors.

Every detector is a function ``(graph, params, seed) -> Cover`` that is
deterministic for fixed arguments.
"""

from dataclasses import dataclass, field
from typing import Callable, Dict, List, Mapping

from asn_maker.algorithms.builtin.hierarchical import girvan_newman, nsim_aggl, walktrap
from asn_maker.algorithms.builtin.infomap import infomap_2l
from asn_maker.algorithms.builtin.modularity_based import cnm, louvain
from asn_maker.algorithms.builtin.overlapping import hlc, kclique
from asn_maker.algorithms.builtin.propagation import labelprop, slpa
from asn_maker.graph.model import Cover, Graph

Detector = Callable[[Graph, Mapping[str, object], int], Cover]


@dataclass(frozen=True)
class BuiltinAlgorithm:
    """A built-in detector with its default grid and category flags."""

    name: str
    detect: Detector
    default_grid: Dict[str, List[object]] = field(default_factory=dict)
    overlapping: bool = False
    spreading: bool = False
    modularity_based: bool = False
    nsim: bool = False


BUILTINS: Dict[str, BuiltinAlgorithm] = {
    algo.name: algo
    for algo in [
        BuiltinAlgorithm("labelprop", labelprop, spreading=True),
        BuiltinAlgorithm(
            "slpa",
            slpa,
            {"r": [0.1, 0.2, 0.3, 0.4, 0.5]},
            overlapping=True,
            spreading=True,
        ),
        BuiltinAlgorithm("louvain", louvain, modularity_based=True),
        BuiltinAlgorithm("cnm", cnm, modularity_based=True),
        BuiltinAlgorithm("girvan_newman", girvan_newman, spreading=True, modularity_based=True),
        BuiltinAlgorithm(
            "walktrap", walktrap, {"t": [2, 4]}, spreading=True, modularity_based=True
        ),
        BuiltinAlgorithm("kclique", kclique, {"k": [3, 4, 5]}, overlapping=True),
        BuiltinAlgorithm("hlc", hlc, overlapping=True, nsim=True),
        BuiltinAlgorithm("nsim_aggl", nsim_aggl, {"level": [0, 1, 2, 3, 4]}, nsim=True),
        BuiltinAlgorithm("infomap_2l", infomap_2l, spreading=True),
    ]
}

__all__ = ["BUILTINS", "BuiltinAlgorithm", "Detector"]
