"""Pipeline staging, run caching and the end-to-end runner."""

from asn_maker.pipeline.cache import RunCache, cache_key  # noqa
from asn_maker.pipeline.runner import run_pipeline  # noqa
