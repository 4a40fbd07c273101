#!/usr/bin/env python3
"""Command-line interface for ASN Maker.

Each subcommand runs one pipeline stage on an artifact directory, reading
the outputs of the earlier stages from it; ``pipeline`` runs them all.
Settings come from a TOML file, then ASN_MAKER_* environment variables,
then command-line flags.

Exit codes: 0 on success, 2 on a configuration error, 3 when a stage fails.
"""

import argparse
import logging
import sys
from typing import Any, Callable, Dict, List, Optional

from asn_maker.analysis.clustering import cluster_asn
from asn_maker.asn.similarity import SimilarityStore
from asn_maker.core.config import PipelineConfig, config_manager
from asn_maker.core.errors import AsnMakerError, ConfigError, StageError
from asn_maker.core.events import Event, RunCompleted, StageCompleted, event_manager
from asn_maker.core.logging import get_logger, setup_logging
from asn_maker.pipeline import stages
from asn_maker.pipeline.cache import RunCache
from asn_maker.pipeline.runner import run_pipeline, stage
from asn_maker.pipeline.stages import Workspace, write_json

logger = get_logger("cli")

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_STAGE = 3


def _int_list(text: str) -> List[int]:
    return [int(item) for item in text.split(",") if item.strip()]


def _float_list(text: str) -> List[float]:
    return [float(item) for item in text.split(",") if item.strip()]


def _str_list(text: str) -> List[str]:
    return [item.strip() for item in text.split(",") if item.strip()]


def _delta(text: str) -> Any:
    return text if text == "auto" else float(text)


def build_parser() -> argparse.ArgumentParser:
    """Parser with one subcommand per stage; all share the config flags."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "-c", "--config", default="config.toml", help="TOML configuration file"
    )
    common.add_argument("-o", "--output-dir", help="Artifact directory")
    common.add_argument("--cache-dir", help="Run cache directory")
    common.add_argument("--registry", dest="registry_path", help="Algorithm registry TSV")
    common.add_argument("--real-networks", dest="real_networks_dir", help="Real edge lists")
    common.add_argument("--n-values", type=_int_list, help="Comma-separated node counts")
    common.add_argument("--mu-values", type=_float_list, help="Comma-separated mixings")
    common.add_argument("--repeats", type=int, help="Benchmarks per grid cell")
    common.add_argument("--modes", type=_str_list, help="disjoint,overlapping")
    common.add_argument("--variant", dest="onmi_variant", help="oNMI variant: MAX, LFK or SUM")
    common.add_argument("--top-k", type=int, help="Mutual top-k size")
    common.add_argument("--tau", dest="threshold_tau", type=float, help="Threshold aggregation")
    common.add_argument("--delta", type=_delta, help="Backbone threshold or 'auto'")
    common.add_argument("--null-trials", type=int, help="Null-model trials")
    common.add_argument("--clusterer", help="Built-in detector clustering the ASN")
    common.add_argument("--workers", type=int, help="Worker processes")
    common.add_argument("--seed", type=int, help="Master seed")
    common.add_argument("--log-level", help="Log level name")
    common.add_argument("--log-file", help="Optional log file")
    common.add_argument(
        "-v", "--verbose", action="store_true", help="Enable verbose logging."
    )

    parser = argparse.ArgumentParser(
        prog="asn-maker",
        description="Build and analyze Algorithm Similarity Networks of community detectors.",
    )
    commands = parser.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("gen-bench", "Generate the LFR benchmark grid"),
        ("run", "Grid-search every registry algorithm on every network"),
        ("similarity", "Compute per-network oNMI matrices"),
        ("build-asn", "Accumulate the ASN and backbone it"),
        ("backbone", "Re-threshold the scored ASN"),
        ("analyze", "Cluster the ASN and write tables and reports"),
        ("rank-gt", "Rank algorithms by agreement with the ground truth"),
        ("robustness", "Compare oNMI variants and aggregations"),
        ("pipeline", "Run every stage"),
    ):
        commands.add_parser(name, parents=[common], help=help_text)
    return parser


CONFIG_FLAGS = (
    "output_dir",
    "cache_dir",
    "registry_path",
    "real_networks_dir",
    "n_values",
    "mu_values",
    "repeats",
    "modes",
    "onmi_variant",
    "top_k",
    "threshold_tau",
    "delta",
    "null_trials",
    "clusterer",
    "workers",
    "seed",
    "log_level",
    "log_file",
)


def load_settings(args: argparse.Namespace) -> PipelineConfig:
    """Config file, then environment, then flags.

    Raises:
        ConfigError: If any layer holds an invalid value
    """
    config_manager.load_config(args.config)
    updates: Dict[str, Any] = {name: getattr(args, name, None) for name in CONFIG_FLAGS}
    if args.verbose:
        updates["log_level"] = "DEBUG"
    return config_manager.update_config(updates)


def _log_progress(event: Event) -> None:
    if isinstance(event, RunCompleted):
        logger.debug(
            "%s on %s: %s%s",
            event.algorithm,
            event.network,
            event.status,
            " (cached)" if event.cached else "",
        )
    elif isinstance(event, StageCompleted):
        logger.info("%s: %s", event.stage, event.summary)


def _gen_bench(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("generate", workspace, {}, seed=config.seed) as summary:
        summary["networks"] = len(stages.generate_networks(config, workspace))
    return summary


def _run(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("run", workspace, {}, workers=config.workers) as summary:
        networks = stages.load_networks(config, workspace)
        specs = stages.load_algorithms(config)
        _, counters = stages.run_detectors(
            config, workspace, networks, specs, RunCache(config.cache_dir)
        )
        summary.update(counters)
    return summary


def _similarity(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("similarity", workspace, {}, variant=config.onmi_variant) as summary:
        networks = stages.load_networks(config, workspace)
        records = stages.load_runs(workspace, networks)
        store = stages.compute_similarity(config, workspace, networks, records)
        summary["networks"] = len(store)
    return summary


def _build_asn(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("asn", workspace, {}, top_k=config.top_k) as summary:
        build = stages.build_asns(config, workspace, SimilarityStore.load(workspace.similarity))
        summary.update(nodes=len(build.full.nodes), backbone_edges=len(build.backbone.edges))
    return summary


def _backbone(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("backbone", workspace, {}, delta=config.delta) as summary:
        main = stages.apply_backbone(config, workspace, stages.load_asns(workspace).full)
        summary.update(delta=main.delta, edges=len(main.edges), isolated=len(main.isolated()))
    return summary


def _load_all(config: PipelineConfig, workspace: Workspace):
    networks = stages.load_networks(config, workspace)
    records = stages.load_runs(workspace, networks)
    store = SimilarityStore.load(workspace.similarity)
    return networks, records, store, stages.load_asns(workspace), stages.load_algorithms(config)


def _analyze(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("analyze", workspace, {}, clusterer=config.clusterer) as summary:
        networks, records, store, build, specs = _load_all(config, workspace)
        summary.update(stages.analyze(config, workspace, networks, records, store, build, specs))
    return summary


def _rank_gt(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("rank-gt", workspace, {}) as summary:
        workspace.analysis.mkdir(parents=True, exist_ok=True)
        ranking = stages.rank_ground_truth(config, workspace, stages.load_asns(workspace))
        if ranking is not None:
            print(ranking.to_string(index=False))
            summary["ranked"] = len(ranking)
    return summary


def _robustness(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    with stage("robustness", workspace, {}, tau=config.threshold_tau) as summary:
        networks, records, store, build, specs = _load_all(config, workspace)
        if not build.backbone.edges:
            raise StageError("robustness", "the ASN has no edges")
        clustering = cluster_asn(build.backbone, config.clusterer, config.seed)
        report = stages.robustness_report(config, networks, records, store, clustering, specs)
        workspace.analysis.mkdir(parents=True, exist_ok=True)
        write_json(report, workspace.analysis / "robustness.json")
        summary["sections"] = sorted(report)
    return summary


def _pipeline(config: PipelineConfig, workspace: Workspace) -> Dict[str, Any]:
    return {"artifacts": str(run_pipeline(config))}


COMMANDS: Dict[str, Callable[[PipelineConfig, Workspace], Dict[str, Any]]] = {
    "gen-bench": _gen_bench,
    "run": _run,
    "similarity": _similarity,
    "build-asn": _build_asn,
    "backbone": _backbone,
    "analyze": _analyze,
    "rank-gt": _rank_gt,
    "robustness": _robustness,
    "pipeline": _pipeline,
}


def main(argv: Optional[List[str]] = None) -> int:
    """Main entry point."""
    args = build_parser().parse_args(argv)

    try:
        config = load_settings(args)
    except ConfigError as e:
        setup_logging(log_level="INFO")
        logging.getLogger("asn_maker").error(f"Configuration error: {e}")
        return EXIT_CONFIG

    setup_logging(log_level=config.log_level, log_file=config.log_file)
    try:
        with event_manager.subscribed(_log_progress, RunCompleted, StageCompleted):
            workspace = Workspace(config.output_dir).prepare()
            COMMANDS[args.command](config, workspace)
    except ConfigError as e:
        logger.error(f"Configuration error: {e}")
        return EXIT_CONFIG
    except AsnMakerError as e:
        logger.error(str(e))
        return EXIT_STAGE
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
