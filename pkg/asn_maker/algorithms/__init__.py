"""Detector registry, built-in detectors and their execution."""

from asn_maker.algorithms.registry import (  # noqa
    AlgorithmSpec,
    RunRecord,
    default_registry,
    expand_grid,
    load_registry,
    write_registry,
)
from asn_maker.algorithms.runner import (  # noqa
    grid_search,
    run_algorithm,
    run_builtin,
    run_external,
)
