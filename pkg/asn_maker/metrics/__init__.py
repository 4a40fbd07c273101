"""Scalar measures over graphs, communities and covers."""

from asn_maker.metrics.onmi import OnmiVariant, nmi_partitions, onmi  # noqa
from asn_maker.metrics.modularity import (  # noqa
    lazar_modularity,
    modularity,
    selection_score,
)
from asn_maker.metrics.community import conductance, density, ncut  # noqa
from asn_maker.metrics.mapequation import map_codelength  # noqa
from asn_maker.metrics.graph_stats import avg_path_length, transitivity  # noqa
