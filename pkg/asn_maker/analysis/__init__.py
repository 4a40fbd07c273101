"""Analyses computed on an ASN."""

from asn_maker.analysis.clustering import AsnClustering, cluster_asn  # noqa
from asn_maker.analysis.distributions import ccdf  # noqa
from asn_maker.analysis.ground_truth import ground_truth_ranking  # noqa
from asn_maker.analysis.null_model import NullModelResult, apl_exact_null, apl_null_model  # noqa
from asn_maker.analysis.robustness import (  # noqa
    asn_statistics,
    partition_agreement,
    sub_asn,
    weight_correlation,
)
from asn_maker.analysis.tables import feature_table, stats_table  # noqa
