"""Community detection on the ASN itself."""

from dataclasses import dataclass
from pathlib import Path
from typing import List, Optional, Tuple, Union

from asn_maker.algorithms.runner import run_builtin
from asn_maker.asn.network import AsnNet
from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover
from asn_maker.metrics.mapequation import (
    map_codelength,
    one_module_codelength,
    singleton_codelength,
)

logger = get_logger("analysis.clustering")


@dataclass(frozen=True)
class AsnClustering:
    """Communities of algorithms found on an ASN.

    Codelengths are in bits; the found codelength is only defined when the
    clustering is a partition.
    """

    nodes: Tuple[str, ...]
    cover: Cover
    clusterer: str
    codelength_one_module: Optional[float]
    codelength_singletons: Optional[float]
    codelength: Optional[float]

    @property
    def communities(self) -> List[List[str]]:
        """Algorithm ids per community, in cover order."""
        return [sorted(self.nodes[i] for i in c) for c in self.cover.communities]

    def memberships(self, algorithm: str) -> List[int]:
        """Indices of the communities containing an algorithm."""
        node = self.nodes.index(algorithm)
        return [k for k, c in enumerate(self.cover.communities) if node in c]


def cluster_asn(net: AsnNet, clusterer: str = "infomap_2l", seed: int = 0) -> AsnClustering:
    """Run a built-in detector on the weighted ASN.

    Disconnected networks are fine: no built-in joins separate components.
    """
    graph = net.to_graph()
    cover = run_builtin(clusterer, graph, {}, seed)
    canonical = Cover.from_communities(cover.canonical(), graph.n)

    one = singletons = found = None
    if graph.m > 0:
        one = one_module_codelength(graph)
        singletons = singleton_codelength(graph)
        if canonical.is_partition():
            found = map_codelength(graph, canonical)
    logger.info(
        "Clustered ASN with %s: %d communities over %d algorithms",
        clusterer,
        len(canonical),
        graph.n,
    )
    return AsnClustering(net.nodes, canonical, clusterer, one, singletons, found)


def write_cover_labels(clustering: AsnClustering, path: Union[str, Path]) -> Path:
    """Write the communities as a cover file over algorithm ids."""
    path = Path(path)
    lines = [" ".join(community) for community in clustering.communities]
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
