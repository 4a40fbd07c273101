"""Pipeline stages and the artifact directory layout.

Every stage reads its inputs from the previous stages' artifacts (or from
memory when the stages run back to back) and writes its own outputs, so
each command-line subcommand can run one stage on its own.
"""

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple

import pandas as pd

from asn_maker.algorithms.registry import (
    AlgorithmSpec,
    RunRecord,
    default_registry,
    load_registry,
    metadata_table,
)
from asn_maker.algorithms.runner import run_algorithm
from asn_maker.analysis.clustering import AsnClustering, cluster_asn, write_cover_labels
from asn_maker.analysis.distributions import ccdf, write_ccdf
from asn_maker.analysis.ground_truth import ground_truth_ranking
from asn_maker.analysis.null_model import apl_null_model
from asn_maker.analysis.robustness import (
    aggregation_agreement,
    asn_statistics,
    partition_agreement,
    sub_asn,
    synthetic_vs_real_correlation,
    variant_correlations,
)
from asn_maker.analysis.tables import feature_table, stats_table
from asn_maker.asn.backbone import backbone, nc_score, select_delta
from asn_maker.asn.build import accumulate
from asn_maker.asn.network import AsnNet, read_asn, write_asn
from asn_maker.asn.similarity import GROUND_TRUTH, SimilarityStore, build_similarity
from asn_maker.benchmark.grid import (
    GROUND_TRUTH_SUFFIX,
    benchmark_grid,
    grid_summary,
    iter_benchmark_files,
    write_benchmark,
    write_manifest,
)
from asn_maker.benchmark.lfr import generate_lfr
from asn_maker.core.config import PipelineConfig
from asn_maker.core.errors import ContractError, DisconnectedPairError, StageError
from asn_maker.core.events import RunCompleted, event_manager
from asn_maker.core.logging import get_logger
from asn_maker.core.seeds import derive_seed
from asn_maker.graph.io import (
    load_id_map,
    read_cover_file,
    read_graph_file,
    write_cover,
    write_id_map,
    write_labelled_cover,
)
from asn_maker.graph.model import Cover, Graph
from asn_maker.metrics.onmi import OnmiVariant
from asn_maker.pipeline.cache import RunCache, cache_key

logger = get_logger("pipeline.stages")

ERRORS_FILE = "errors.jsonl"
ID_MAP_SUFFIX = ".idmap"


@dataclass(frozen=True)
class Network:
    """An input network of the sweep."""

    id: str
    kind: str
    graph: Graph
    ground_truth: Optional[Cover] = None


@dataclass(frozen=True)
class AsnBuild:
    """Outputs of the ASN stage."""

    full: AsnNet
    backbone: AsnNet
    ground_truth: Optional[AsnNet]


class Workspace:
    """Paths of an artifact directory."""

    def __init__(self, root: Path) -> None:
        self.root = Path(root)

    @property
    def benchmarks(self) -> Path:
        return self.root / "benchmarks"

    @property
    def runs(self) -> Path:
        return self.root / "runs"

    @property
    def covers(self) -> Path:
        return self.runs / "covers"

    @property
    def similarity(self) -> Path:
        return self.root / "similarity"

    @property
    def asn(self) -> Path:
        return self.root / "asn"

    @property
    def analysis(self) -> Path:
        return self.root / "analysis"

    @property
    def real(self) -> Path:
        """Id maps of ingested real networks."""
        return self.root / "real"

    def id_map_path(self, network: str) -> Path:
        return self.real / f"{network}{ID_MAP_SUFFIX}"

    @property
    def errors(self) -> Path:
        return self.root / ERRORS_FILE

    def prepare(self) -> "Workspace":
        for path in (self.benchmarks, self.runs, self.similarity, self.asn, self.analysis):
            path.mkdir(parents=True, exist_ok=True)
        return self

    def log_error(self, entry: Mapping[str, Any]) -> None:
        """Append one JSON object to the machine-readable error log."""
        self.root.mkdir(parents=True, exist_ok=True)
        with self.errors.open("a", encoding="utf-8") as handle:
            handle.write(json.dumps(dict(entry), sort_keys=True, default=str) + "\n")


def write_json(data: Any, path: Path) -> Path:
    path.write_text(json.dumps(data, sort_keys=True, indent=2, default=str) + "\n", "utf-8")
    return path


def load_algorithms(config: PipelineConfig) -> List[AlgorithmSpec]:
    """The configured registry, or the built-in catalog when it is absent."""
    path = config.registry_path
    if path is not None and Path(path).exists():
        return load_registry(path)
    logger.warning("Registry %s not found; using the built-in catalog", path)
    return default_registry()


# Stage 1: networks


def generate_networks(config: PipelineConfig, workspace: Workspace) -> List[Network]:
    """Generate the benchmark grid and ingest real networks."""
    specs = benchmark_grid(
        config.n_values, config.mu_values, config.repeats, config.modes, config.seed, config.k_avg
    )
    networks, rows = [], []
    for spec in specs:
        benchmark = generate_lfr(spec.params)
        rows.append(write_benchmark(spec, benchmark, workspace.benchmarks))
        networks.append(Network(spec.id, "synthetic", benchmark.graph, benchmark.ground_truth))
    if rows:
        write_manifest(rows, workspace.benchmarks)
        summary = grid_summary(pd.DataFrame(rows))
        logger.info("Generated %d benchmarks\n%s", len(rows), summary.to_string(index=False))
    networks.extend(ingest_real_networks(config, workspace))
    return networks


def ingest_real_networks(config: PipelineConfig, workspace: Workspace) -> List[Network]:
    """Load every edge list of the real-networks directory and keep the map
    from original node labels to dense ids next to the artifacts."""
    directory = config.real_networks_dir
    if directory is None:
        return []
    networks = []
    for path in sorted(Path(directory).glob("*.edges")):
        graph = read_graph_file(path, symmetrize=True)
        network = Network(f"real_{path.stem}", "real", graph)
        workspace.real.mkdir(parents=True, exist_ok=True)
        workspace.id_map_path(network.id).write_bytes(write_id_map(graph))
        networks.append(network)
    logger.info("Ingested %d real networks from %s", len(networks), directory)
    return networks


def load_networks(config: PipelineConfig, workspace: Workspace) -> List[Network]:
    """Networks written by an earlier generation stage."""
    networks = []
    for path in iter_benchmark_files(workspace.benchmarks):
        graph = read_graph_file(path)
        truth_path = path.with_name(path.stem + GROUND_TRUTH_SUFFIX)
        truth = read_cover_file(truth_path, graph.n) if truth_path.exists() else None
        networks.append(Network(path.stem, "synthetic", graph, truth))
    if not networks:
        raise StageError("run", f"no benchmarks in {workspace.benchmarks}")
    return networks + ingest_real_networks(config, workspace)


# Stage 2: detector sweep


def run_signature(spec: AlgorithmSpec, network: Network) -> Dict[str, Any]:
    """Everything besides graph and seed that determines a run's output."""
    signature: Dict[str, Any] = {
        "kind": spec.kind,
        "procedure": spec.procedure,
        "grid": spec.param_grid,
    }
    if spec.kind == "external" and network.ground_truth is not None:
        signature["ground_truth"] = write_cover(network.ground_truth).decode("utf-8")
    return signature


def _execute(task: Tuple[AlgorithmSpec, Network, int]) -> RunRecord:
    spec, network, seed = task
    return run_algorithm(spec, network.graph, network.id, seed, ground_truth=network.ground_truth)


def _canonical(record: RunRecord) -> RunRecord:
    if record.cover is None:
        return record
    cover = Cover.from_communities(record.cover.canonical(), record.cover.n)
    return RunRecord(
        record.algorithm,
        record.network,
        record.params,
        cover,
        record.seconds,
        record.status,
        record.score,
        record.message,
        record.cached,
    )


def run_detectors(
    config: PipelineConfig,
    workspace: Workspace,
    networks: Sequence[Network],
    specs: Sequence[AlgorithmSpec],
    cache: RunCache,
) -> Tuple[List[RunRecord], Dict[str, int]]:
    """Grid-search every algorithm on every network, serving cached runs.

    Returns:
        The records sorted by (network, algorithm) and sweep counters
    """
    tasks, keys, records, hit_keys = [], {}, [], []
    for network in networks:
        digest = network.graph.digest()
        for spec in specs:
            seed = derive_seed(config.seed, spec.id, network.id)
            key = cache_key(spec.id, run_signature(spec, network), digest, seed)
            keys[(spec.id, network.id)] = (key, spec, network, seed)
            cached = cache.get(key)
            if cached is not None:
                records.append(cached)
                hit_keys.append(key)
                event_manager.publish(RunCompleted(spec.id, network.id, cached.status, True))
            else:
                tasks.append((spec, network, seed))

    hits = len(records)
    logger.info("Sweep: %d cached runs, %d to execute", hits, len(tasks))
    if config.workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=config.workers) as pool:
            fresh = list(pool.map(_execute, tasks, chunksize=1))
    else:
        fresh = [_execute(task) for task in tasks]

    for record in fresh:
        key = keys[(record.algorithm, record.network)][0]
        cache.put(key, _canonical(record))
        event_manager.publish(RunCompleted(record.algorithm, record.network, record.status, False))
    records.extend(fresh)
    records = sorted((_canonical(r) for r in records), key=lambda r: (r.network, r.algorithm))

    for record in records:
        if not record.ok:
            workspace.log_error(
                {
                    "stage": "run",
                    "algorithm": record.algorithm,
                    "network": record.network,
                    "status": record.status,
                    "message": record.message,
                }
            )

    mismatches: List[str] = []
    if hits and config.cache_audit:
        by_key = {key: (spec, network, seed) for key, spec, network, seed in keys.values()}

        def recompute(key: str) -> Optional[Cover]:
            return _execute(by_key[key]).cover

        mismatches = cache.audit(hit_keys, recompute, config.cache_audit, config.seed)

    write_runs(records, workspace)
    counters = {
        "runs": len(records),
        "cached": hits,
        "executed": len(tasks),
        "failed": sum(1 for r in records if not r.ok),
        "audit_mismatches": len(mismatches),
    }
    return records, counters


def write_runs(records: Sequence[RunRecord], workspace: Workspace) -> None:
    """Write runs.csv and one cover file per successful run.

    Runs on real networks also get a ``.labels`` cover over the original
    node labels.
    """
    id_maps: Dict[str, Optional[Dict[str, int]]] = {}
    rows = []
    for record in records:
        rows.append(
            {
                "algorithm": record.algorithm,
                "network": record.network,
                "status": record.status,
                "score": record.score,
                "params": json.dumps(record.params, sort_keys=True),
                "message": record.message,
            }
        )
        if record.cover is not None:
            directory = workspace.covers / record.network
            directory.mkdir(parents=True, exist_ok=True)
            (directory / f"{record.algorithm}.cover").write_bytes(write_cover(record.cover))
            id_map = _id_map(workspace, record.network, id_maps)
            if id_map is not None:
                labelled = write_labelled_cover(record.cover, id_map)
                (directory / f"{record.algorithm}.labels").write_bytes(labelled)
    columns = ["algorithm", "network", "status", "score", "params", "message"]
    pd.DataFrame(rows, columns=columns).to_csv(
        workspace.runs / "runs.csv", index=False, float_format="%.10g"
    )


def _id_map(
    workspace: Workspace, network: str, loaded: Dict[str, Optional[Dict[str, int]]]
) -> Optional[Dict[str, int]]:
    if network not in loaded:
        path = workspace.id_map_path(network)
        loaded[network] = load_id_map(path.read_bytes()) if path.exists() else None
    return loaded[network]


def load_runs(workspace: Workspace, networks: Sequence[Network]) -> List[RunRecord]:
    """Records written by an earlier sweep."""
    path = workspace.runs / "runs.csv"
    if not path.exists():
        raise StageError("similarity", f"no sweep results at {path}")
    sizes = {network.id: network.graph.n for network in networks}
    frame = pd.read_csv(path, dtype={"algorithm": str, "network": str}, keep_default_na=False)
    records = []
    for row in frame.to_dict("records"):
        cover = None
        if row["status"] == "ok":
            cover_path = workspace.covers / row["network"] / f"{row['algorithm']}.cover"
            cover = read_cover_file(cover_path, sizes[row["network"]])
        score = float(row["score"]) if row["score"] != "" else None
        records.append(
            RunRecord(
                row["algorithm"],
                row["network"],
                json.loads(row["params"]),
                cover,
                0.0,
                row["status"],
                score,
                str(row["message"]),
                cached=True,
            )
        )
    return records


# Stage 3: similarity


def build_store(
    networks: Sequence[Network],
    records: Sequence[RunRecord],
    variant: str = "MAX",
    include_ground_truth: bool = True,
) -> SimilarityStore:
    """One oNMI matrix per network over its successful runs."""
    covers: Dict[str, Dict[str, Cover]] = {}
    for record in records:
        if record.ok:
            covers.setdefault(record.network, {})[record.algorithm] = record.cover
    store = SimilarityStore()
    for network in networks:
        truth = network.ground_truth if include_ground_truth else None
        runs = covers.get(network.id, {})
        if len(runs) + (truth is not None) < 2:
            logger.warning("Skipping %s: fewer than two covers", network.id)
            continue
        store.add(network.id, build_similarity(runs, variant, truth), network.kind)
    return store


def compute_similarity(
    config: PipelineConfig,
    workspace: Workspace,
    networks: Sequence[Network],
    records: Sequence[RunRecord],
) -> SimilarityStore:
    store = build_store(networks, records, config.onmi_variant)
    store.save(workspace.similarity)
    logger.info(
        "Similarity matrices: %d networks, %d algorithms", len(store), len(store.algorithms)
    )
    return store


# Stage 4: ASN


def build_asns(
    config: PipelineConfig, workspace: Workspace, store: SimilarityStore
) -> AsnBuild:
    """Accumulate, score and backbone the main ASN; also build the
    ground-truth ASN over the synthetic networks."""
    counts = accumulate(store.without_ground_truth(), config.top_k)
    if counts.edges:
        full = nc_score(counts)
    else:
        logger.warning("No two algorithms agree on any network; the ASN has no edges")
        full = AsnNet(counts.nodes, counts.weights, {})
    isolated = full.isolated()
    if isolated:
        logger.warning(
            "Algorithms without any mutual top-%d agreement: %s", config.top_k, isolated
        )
        full = full.induced(n for n in full.nodes if n not in isolated)

    synthetic = store.by_kind("synthetic")
    truth_net = None
    if GROUND_TRUTH in synthetic.algorithms:
        truth_net = accumulate(synthetic, config.top_k)
        write_asn(truth_net, workspace.asn / "asn_ground_truth.csv")

    write_asn(full, workspace.asn / "asn_full.csv")
    (workspace.asn / "nodes.txt").write_text("\n".join(full.nodes) + "\n", "utf-8")
    return AsnBuild(full, apply_backbone(config, workspace, full), truth_net)


def apply_backbone(config: PipelineConfig, workspace: Workspace, full: AsnNet) -> AsnNet:
    """Threshold the scored ASN at the configured (or selected) delta.

    An ASN without edges is written as is, with no delta.
    """
    delta: Optional[float] = None
    if not full.edges:
        logger.warning("The ASN has no edges; there is no backbone to select")
        main = full
    else:
        delta = select_delta(full) if config.delta == "auto" else float(config.delta)
        main = backbone(full, delta)
    logger.info(
        "ASN: %d algorithms, %d weighted pairs, backbone at delta=%s keeps %d edges",
        len(full.nodes),
        len(full.edges),
        delta,
        len(main.edges),
    )
    write_asn(main, workspace.asn / "asn_backbone.csv")
    write_json({"delta": delta, "mode": str(config.delta)}, workspace.asn / "delta.json")
    return main


def load_asns(workspace: Workspace) -> AsnBuild:
    nodes_path = workspace.asn / "nodes.txt"
    if not nodes_path.exists():
        raise StageError("analyze", f"no ASN in {workspace.asn}")
    nodes = nodes_path.read_text("utf-8").split()
    delta = json.loads((workspace.asn / "delta.json").read_text("utf-8"))["delta"]
    full = read_asn(workspace.asn / "asn_full.csv", nodes)
    main = read_asn(workspace.asn / "asn_backbone.csv", nodes)
    main = AsnNet(main.nodes, main.weights, main.scores, delta)
    truth_path = workspace.asn / "asn_ground_truth.csv"
    truth = read_asn(truth_path) if truth_path.exists() else None
    return AsnBuild(full, main, truth)


# Stage 5: analysis


def rank_ground_truth(
    config: PipelineConfig, workspace: Workspace, build: AsnBuild
) -> Optional[pd.DataFrame]:
    if build.ground_truth is None or GROUND_TRUTH not in build.ground_truth.nodes:
        logger.warning("No ground-truth ASN; skipping the ranking")
        return None
    ranking = ground_truth_ranking(build.ground_truth)
    ranking.to_csv(workspace.analysis / "ground_truth_ranking.csv", index=False)
    return ranking


def null_model_report(
    config: PipelineConfig, build: AsnBuild, ranking: Optional[pd.DataFrame]
) -> Dict[str, Any]:
    """Average path length of the best ground-truth matches on the backbone."""
    if ranking is None or ranking.empty:
        return {"skipped": "no ground-truth ranking"}
    net = build.backbone
    top = [a for a in ranking["algorithm"].head(config.gt_top) if a in net.nodes]
    if len(top) < 2:
        return {"skipped": "fewer than two ranked algorithms on the backbone"}
    index = net.index()
    try:
        result = apl_null_model(
            net.to_graph(), [index[a] for a in top], config.null_trials, config.seed
        )
    except (DisconnectedPairError, ContractError) as e:
        return {"skipped": str(e), "algorithms": top}
    return {
        "algorithms": top,
        "observed": result.observed,
        "null_mean": result.mean,
        "p_value": result.p_value,
        "trials": result.trials,
        "seed": result.seed,
        "resamples": result.resamples,
    }


def robustness_report(
    config: PipelineConfig,
    networks: Sequence[Network],
    records: Sequence[RunRecord],
    store: SimilarityStore,
    clustering: AsnClustering,
    specs: Sequence[AlgorithmSpec],
) -> Dict[str, Any]:
    report: Dict[str, Any] = {}
    nets = {}
    for variant in OnmiVariant:
        variant_store = (
            store
            if variant.value == config.onmi_variant
            else build_store(networks, records, variant.value, include_ground_truth=False)
        )
        nets[variant.value] = accumulate(variant_store.without_ground_truth(), config.top_k)
    try:
        report["variant_correlations"] = variant_correlations(nets)
    except (ContractError, ValueError) as e:
        report["variant_correlations"] = {"skipped": str(e)}

    main_store = store.without_ground_truth()
    report["aggregation_agreement"] = aggregation_agreement(
        main_store, clustering, config.top_k, config.threshold_tau, config.clusterer, config.seed
    )
    try:
        report["synthetic_vs_real"] = synthetic_vs_real_correlation(main_store, config.top_k)
    except (ContractError, ValueError) as e:
        report["synthetic_vs_real"] = {"skipped": str(e)}

    overlapping = [s.id for s in specs if s.overlapping and s.id in main_store.algorithms]
    if len(overlapping) >= 2:
        try:
            scored = sub_asn(main_store, overlapping, config.top_k)
            delta = (
                config.sub_asn_delta
                if config.sub_asn_delta is not None
                else select_delta(scored)
            )
            overlap_net = backbone(scored, delta)
            report["overlapping_sub_asn"] = {
                "algorithms": overlapping,
                "delta": delta,
                "edges": [list(p) for p in overlap_net.edges],
            }
        except (ContractError, ValueError) as e:
            report["overlapping_sub_asn"] = {"skipped": str(e)}
    return report


def analyze(
    config: PipelineConfig,
    workspace: Workspace,
    networks: Sequence[Network],
    records: Sequence[RunRecord],
    store: SimilarityStore,
    build: AsnBuild,
    specs: Sequence[AlgorithmSpec],
) -> Dict[str, Any]:
    """Cluster the ASN and write every table and report."""
    out = workspace.analysis
    if not build.backbone.edges:
        reason = "the ASN has no edges"
        logger.warning("Skipping ASN clustering and its reports: %s", reason)
        rank_ground_truth(config, workspace, build)
        write_json({"skipped": reason}, out / "statistics.json")
        return {"clusterer": config.clusterer, "skipped": reason}

    clustering = cluster_asn(build.backbone, config.clusterer, config.seed)
    write_cover_labels(clustering, out / "asn_communities.cover")

    metadata = metadata_table(specs)
    feature_table(clustering.communities, metadata).to_csv(
        out / "community_features.csv", index=False, float_format="%.10g"
    )
    graphs = {network.id: network.graph for network in networks}
    stats_table(clustering.communities, records, graphs).to_csv(
        out / "community_stats.csv", index=False, float_format="%.10g"
    )

    summary: Dict[str, Any] = {"clusterer": config.clusterer}
    if config.overlap_clusterer:
        overlap = cluster_asn(build.backbone, config.overlap_clusterer, config.seed)
        write_cover_labels(overlap, out / "asn_communities_overlap.cover")
        summary["overlap_agreement"] = partition_agreement(
            clustering.communities, overlap.communities, list(clustering.nodes)
        )

    weights = [w for w in build.full.weights.values() if w > 0]
    if weights:
        write_ccdf(ccdf(weights), out / "ccdf.csv")

    ranking = rank_ground_truth(config, workspace, build)
    write_json(null_model_report(config, build, ranking), out / "null_model.json")
    statistics = asn_statistics(build.backbone, clustering)
    write_json(statistics, out / "statistics.json")
    write_json(
        robustness_report(config, networks, records, store, clustering, specs),
        out / "robustness.json",
    )
    summary.update(statistics)
    return summary
