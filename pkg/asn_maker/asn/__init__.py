"""Algorithm Similarity Network construction and backboning."""

from asn_maker.asn.backbone import backbone, nc_score, select_delta  # noqa
from asn_maker.asn.build import (  # noqa
    accumulate,
    aggregate_average,
    aggregate_threshold,
    mutual_topk,
)
from asn_maker.asn.network import AsnNet, read_asn, write_asn  # noqa
from asn_maker.asn.similarity import GROUND_TRUTH, SimilarityStore, build_similarity  # noqa
