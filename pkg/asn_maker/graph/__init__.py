"""Graph and cover data model with edge-list and cover-file I/O."""

from asn_maker.graph.model import Cover, Graph, is_partition  # noqa
from asn_maker.graph.io import (  # noqa
    load_cover,
    load_graph,
    write_cover,
    write_graph,
)
