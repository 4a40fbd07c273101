"""End-to-end pipeline: stage sequencing, progress events and the artifact
manifest."""

import hashlib
import time
from contextlib import contextmanager
from pathlib import Path
from typing import Any, Dict, Iterator

from asn_maker import __version__
from asn_maker.core.config import PipelineConfig
from asn_maker.core.errors import ConfigError, StageError
from asn_maker.core.events import StageCompleted, StageStarted, event_manager
from asn_maker.core.logging import get_logger, log_error_with_context
from asn_maker.pipeline import stages
from asn_maker.pipeline.cache import RunCache
from asn_maker.pipeline.stages import Workspace, write_json

logger = get_logger("pipeline.runner")

MANIFEST_FILE = "manifest.json"
STAGES = ("generate", "run", "similarity", "asn", "analyze")


@contextmanager
def stage(
    name: str, workspace: Workspace, record: Dict[str, Any], **parameters: Any
) -> Iterator[Dict[str, Any]]:
    """Run a stage body: publish its events, time it, and turn failures into
    StageError after writing them to the error log. Configuration errors are
    logged too but propagate unchanged.

    Yields:
        A summary dict the body may fill in
    """
    summary: Dict[str, Any] = {}
    event_manager.publish(StageStarted(name, dict(parameters)))
    logger.info("Stage %s started", name)
    start = time.perf_counter()
    try:
        yield summary
    except Exception as e:
        log_error_with_context(e, {"stage": name})
        workspace.log_error({"stage": name, "error": type(e).__name__, "message": str(e)})
        record[name] = {"status": "failed", "parameters": parameters, "error": str(e)}
        if isinstance(e, (StageError, ConfigError)):
            raise
        raise StageError(name, str(e)) from e
    seconds = time.perf_counter() - start
    record[name] = {"status": "ok", "parameters": parameters, "summary": summary}
    event_manager.publish(StageCompleted(name, seconds, summary))
    logger.info("Stage %s completed in %.1fs", name, seconds)


def digests(root: Path) -> Dict[str, str]:
    """SHA-256 of every CSV under the artifact directory."""
    return {
        str(path.relative_to(root)): hashlib.sha256(path.read_bytes()).hexdigest()
        for path in sorted(root.rglob("*.csv"))
    }


def write_manifest(config: PipelineConfig, workspace: Workspace, record: Dict[str, Any]) -> Path:
    manifest = {
        "version": __version__,
        "config": config.model_dump(mode="json"),
        "stages": record,
        "digests": digests(workspace.root),
    }
    return write_json(manifest, workspace.root / MANIFEST_FILE)


def run_pipeline(config: PipelineConfig) -> Path:
    """Run all stages and return the artifact directory.

    Partial artifacts and the manifest are kept when a stage fails.

    Raises:
        ConfigError: If a stage meets an invalid configuration, such as a
            malformed registry
        StageError: If a stage fails
    """
    workspace = Workspace(config.output_dir).prepare()
    workspace.errors.unlink(missing_ok=True)
    cache = RunCache(config.cache_dir)
    record: Dict[str, Any] = {}
    try:
        with stage(
            "generate",
            workspace,
            record,
            n_values=config.n_values,
            mu_values=config.mu_values,
            repeats=config.repeats,
            modes=config.modes,
        ) as summary:
            networks = stages.generate_networks(config, workspace)
            summary["networks"] = len(networks)

        with stage(
            "run", workspace, record, registry=str(config.registry_path), seed=config.seed
        ) as summary:
            specs = stages.load_algorithms(config)
            records, counters = stages.run_detectors(config, workspace, networks, specs, cache)
            summary.update(counters)
            summary["algorithms"] = len(specs)

        with stage(
            "similarity", workspace, record, variant=config.onmi_variant
        ) as summary:
            store = stages.compute_similarity(config, workspace, networks, records)
            summary["networks"] = len(store)

        with stage("asn", workspace, record, top_k=config.top_k, delta=config.delta) as summary:
            build = stages.build_asns(config, workspace, store)
            summary.update(
                nodes=len(build.full.nodes),
                edges=len(build.full.edges),
                backbone_edges=len(build.backbone.edges),
                delta=build.backbone.delta,
            )

        with stage(
            "analyze",
            workspace,
            record,
            clusterer=config.clusterer,
            null_trials=config.null_trials,
        ) as summary:
            summary.update(
                stages.analyze(config, workspace, networks, records, store, build, specs)
            )
    finally:
        write_manifest(config, workspace, record)
    logger.info("Artifacts written to %s", workspace.root)
    return workspace.root
