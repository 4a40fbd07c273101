"""LFR benchmark generation and benchmark grids."""

from asn_maker.benchmark.lfr import (  # noqa
    LfrBenchmark,
    LfrParams,
    default_params,
    generate_lfr,
    realized_mixing,
)
from asn_maker.benchmark.powerlaw import sample_truncated_powerlaw  # noqa
