"""Parsing and serialization of edge lists, cover files and id maps.

Edge lists hold one edge per line with an optional third weight column;
lines starting with '#' are comments. Cover files hold one community per
line. Id maps are two-column text files (original label, dense id).
"""

import math
import re
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from asn_maker.core.errors import CoverRangeError, GraphFormatError
from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover, Edge, Graph

logger = get_logger("graph.io")

TextInput = Union[str, bytes]
NODES_HEADER = re.compile(r"#\s*nodes\s+(\d+)\s*$")


def _decode(data: TextInput) -> str:
    if isinstance(data, bytes):
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError as e:
            raise GraphFormatError(f"input is not UTF-8: {e}") from e
    return data


def _dense_ids(labels: List[str], declared: Optional[int] = None) -> Dict[str, int]:
    """Map labels to 0..n-1: numeric order when all labels are integers,
    order of first appearance otherwise.

    A declared node count keeps canonical ids as they are, so nodes without
    edges survive a round trip.
    """
    unique = list(dict.fromkeys(labels))
    if declared is not None and all(
        label.isdigit() and label == str(int(label)) and int(label) < declared
        for label in unique
    ):
        return {str(i): i for i in range(declared)}
    try:
        ordered = sorted(unique, key=int)
    except ValueError:
        ordered = unique
    return {label: index for index, label in enumerate(ordered)}


def load_graph(data: TextInput, symmetrize: bool = False) -> Graph:
    """Parse an edge list into a Graph with dense node ids.

    Args:
        data: Edge-list text or bytes
        symmetrize: Accept directed input, merging reciprocal arcs

    Returns:
        The parsed graph; labels hold the original node tokens

    Raises:
        GraphFormatError: On self-loops, malformed lines, non-numeric or
            non-positive weights, or directed input without symmetrize
    """
    arcs: List[Tuple[str, str, float]] = []
    explicit_weights = False
    declared: Optional[int] = None
    for line_number, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            header = NODES_HEADER.match(line)
            if header:
                declared = int(header.group(1))
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise GraphFormatError(
                f"expected 2 or 3 columns, found {len(tokens)}", line_number
            )
        u, v = tokens[0], tokens[1]
        if u == v:
            raise GraphFormatError(f"self-loop on node {u!r}", line_number)
        weight = 1.0
        if len(tokens) == 3:
            explicit_weights = True
            try:
                weight = float(tokens[2])
            except ValueError as e:
                raise GraphFormatError(
                    f"non-numeric weight {tokens[2]!r}", line_number
                ) from e
            if not (weight > 0 and math.isfinite(weight)):
                raise GraphFormatError(
                    f"weight must be positive and finite, got {tokens[2]}", line_number
                )
        arcs.append((u, v, weight))

    ids = _dense_ids([label for u, v, _ in arcs for label in (u, v)], declared)

    directed_weights: Dict[Tuple[int, int], float] = {}
    for u_label, v_label, weight in arcs:
        key = (ids[u_label], ids[v_label])
        directed_weights[key] = directed_weights.get(key, 0.0) + weight

    weights: Dict[Edge, float] = {}
    for (u, v), weight in directed_weights.items():
        edge = (u, v) if u < v else (v, u)
        if (v, u) in directed_weights:
            if not symmetrize:
                raise GraphFormatError(
                    f"pair ({_label_of(ids, u)}, {_label_of(ids, v)}) appears in "
                    "both orientations; pass symmetrize=True for directed input"
                )
            weights[edge] = max(weights.get(edge, 0.0), weight)
        else:
            weights[edge] = weights.get(edge, 0.0) + weight

    labels = [None] * len(ids)
    for label, index in ids.items():
        labels[index] = label

    unweighted = not explicit_weights and all(w == 1.0 for w in weights.values())
    graph = Graph.from_edges(
        len(ids),
        weights.keys(),
        weights=None if unweighted else weights,
        labels=labels,
    )
    logger.debug(f"Parsed graph with {graph.n} nodes and {graph.m} edges")
    return graph


def _label_of(ids: Dict[str, int], node: int) -> str:
    for label, index in ids.items():
        if index == node:
            return label
    return str(node)


def write_graph(graph: Graph) -> bytes:
    """Canonical edge list over dense ids, weights included when present.

    The leading "# nodes n" comment lets load_graph restore isolated nodes.
    """
    return graph.canonical_text().encode("utf-8")


def load_cover(data: TextInput, n: int) -> Cover:
    """Parse a cover file, one community per line.

    Nodes missing from every line become singleton communities; repeated
    ids within a line collapse.

    Raises:
        GraphFormatError: On non-integer tokens
        CoverRangeError: On node ids outside 0..n-1
    """
    communities = []
    for line_number, raw in enumerate(_decode(data).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        try:
            nodes = {int(token) for token in line.split()}
        except ValueError as e:
            raise GraphFormatError(f"non-integer node id: {e}", line_number) from e
        out_of_range = sorted(v for v in nodes if not 0 <= v < n)
        if out_of_range:
            raise CoverRangeError(
                f"line {line_number}: node id {out_of_range[0]} outside 0..{n - 1}"
            )
        communities.append(nodes)
    return Cover.from_communities(communities, n)


def write_cover(cover: Cover) -> bytes:
    """One community per line, ids ascending, ordered by smallest member."""
    lines = [" ".join(str(v) for v in community) for community in cover.canonical()]
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""


def write_labelled_cover(cover: Cover, id_map: Mapping[str, int]) -> bytes:
    """Cover file over original labels, translated through an id map.

    Raises:
        CoverRangeError: If a node of the cover has no label in the map
    """
    labels = {index: label for label, index in id_map.items()}
    lines = []
    for community in cover.canonical():
        missing = [v for v in community if v not in labels]
        if missing:
            raise CoverRangeError(f"node id {missing[0]} has no label in the id map")
        lines.append(" ".join(labels[v] for v in community))
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""


def write_id_map(graph: Graph) -> bytes:
    """Two-column sidecar: original label, dense id."""
    lines = [f"{graph.label(i)}\t{i}" for i in range(graph.n)]
    return ("\n".join(lines) + "\n").encode("utf-8") if lines else b""


def load_id_map(data: TextInput) -> Dict[str, int]:
    """Parse an id-map sidecar into label -> dense id."""
    mapping = {}
    for line_number, raw in enumerate(_decode(data).splitlines(), start=1):
        if not raw.strip():
            continue
        parts = raw.rsplit("\t", 1) if "\t" in raw else raw.rsplit(None, 1)
        if len(parts) != 2:
            raise GraphFormatError("expected label and id", line_number)
        try:
            mapping[parts[0].strip()] = int(parts[1])
        except ValueError as e:
            raise GraphFormatError(f"non-integer id {parts[1]!r}", line_number) from e
    return mapping


def read_graph_file(path: Union[str, Path], symmetrize: bool = False) -> Graph:
    """Load an edge-list file."""
    return load_graph(Path(path).read_bytes(), symmetrize=symmetrize)


def read_cover_file(path: Union[str, Path], n: int) -> Cover:
    """Load a cover file for a graph of n nodes."""
    return load_cover(Path(path).read_bytes(), n)
