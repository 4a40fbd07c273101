"""Detector execution: built-ins in process, external commands in a shell,
and modularity-driven grid search over a registry entry's parameters."""

import shlex
import subprocess
import tempfile
import time
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Dict, Mapping, Optional, Union

from asn_maker.algorithms.builtin import BUILTINS
from asn_maker.algorithms.registry import AlgorithmSpec, RunRecord, expand_grid
from asn_maker.core.errors import AlgorithmError, AlgorithmTimeoutError
from asn_maker.core.logging import get_logger
from asn_maker.graph.io import read_cover_file, write_cover, write_graph
from asn_maker.graph.model import Cover, Graph
from asn_maker.metrics.modularity import selection_score

logger = get_logger("algorithms.runner")

INPUT_NAME = "input.edges"
OUTPUT_NAME = "output.cover"
GROUND_TRUTH_SUFFIX = ".gt"


def run_builtin(
    procedure: str, graph: Graph, params: Mapping[str, Any], seed: int
) -> Cover:
    """Run a built-in detector.

    Raises:
        AlgorithmError: Unknown procedure, out-of-domain parameter, or any
            other failure inside the detector
    """
    algo = BUILTINS.get(procedure)
    if algo is None:
        raise AlgorithmError(f"unknown built-in algorithm '{procedure}'")
    try:
        cover = algo.detect(graph, dict(params), seed)
    except AlgorithmError:
        raise
    except (TypeError, ValueError) as e:
        raise AlgorithmError(f"{procedure} rejected params {dict(params)}: {e}") from e
    except Exception as e:  # noqa: BLE001
        raise AlgorithmError(
            f"{procedure} failed at {dict(params)}: {type(e).__name__}: {e}"
        ) from e
    if cover.n != graph.n:
        raise AlgorithmError(f"{procedure} returned a cover over {cover.n} nodes")
    return cover


def run_external(
    spec: AlgorithmSpec,
    graph: Graph,
    workdir: Union[str, Path],
    seed: int,
    params: Optional[Mapping[str, Any]] = None,
    ground_truth: Optional[Cover] = None,
) -> Cover:
    """Run an external command on the graph and parse its cover.

    The graph is written to ``workdir/input.edges`` (with an
    ``input.edges.gt`` sidecar when a ground truth is given). The template
    placeholders ``{input}``, ``{output}`` and ``{seed}`` plus one per grid
    parameter are substituted before the command runs under ``sh -c``.

    Raises:
        AlgorithmTimeoutError: If the command exceeds the algorithm's timeout
        AlgorithmError: On nonzero exit or unparseable output
    """
    workdir = Path(workdir)
    workdir.mkdir(parents=True, exist_ok=True)
    input_path = workdir / INPUT_NAME
    output_path = workdir / OUTPUT_NAME
    input_path.write_bytes(write_graph(graph))
    if ground_truth is not None:
        Path(f"{input_path}{GROUND_TRUTH_SUFFIX}").write_bytes(write_cover(ground_truth))
    output_path.unlink(missing_ok=True)

    values = {name: shlex.quote(str(value)) for name, value in (params or {}).items()}
    values.update(
        input=shlex.quote(str(input_path)),
        output=shlex.quote(str(output_path)),
        seed=str(seed),
    )
    try:
        command = spec.command_template.format_map(values)
    except (KeyError, IndexError, ValueError) as e:
        raise AlgorithmError(f"{spec.id}: bad command template: {e}") from e

    logger.debug("Running %s: %s", spec.id, command)
    try:
        result = subprocess.run(
            ["sh", "-c", command],
            cwd=workdir,
            capture_output=True,
            text=True,
            timeout=spec.timeout,
        )
    except subprocess.TimeoutExpired as e:
        raise AlgorithmTimeoutError(spec.id, spec.timeout) from e

    if result.returncode != 0:
        detail = result.stderr.strip().splitlines()[-1:] or [""]
        raise AlgorithmError(f"{spec.id} exited with {result.returncode}: {detail[0]}")
    if not output_path.exists():
        raise AlgorithmError(f"{spec.id} wrote no output file")
    try:
        return read_cover_file(output_path, graph.n)
    except ValueError as e:
        raise AlgorithmError(f"{spec.id} produced an unparseable cover: {e}") from e


def run_once(
    spec: AlgorithmSpec,
    graph: Graph,
    params: Mapping[str, Any],
    seed: int,
    workdir: Optional[Union[str, Path]] = None,
    ground_truth: Optional[Cover] = None,
) -> Cover:
    """Run one grid point of a registry entry."""
    if spec.kind == "builtin":
        return run_builtin(spec.procedure, graph, params, seed)
    if workdir is not None:
        return run_external(spec, graph, workdir, seed, params, ground_truth)
    with tempfile.TemporaryDirectory(prefix="asn_maker_") as scratch:
        return run_external(spec, graph, scratch, seed, params, ground_truth)


@dataclass(frozen=True)
class GridSearchResult:
    """The selected grid point."""

    params: Dict[str, Any]
    cover: Cover
    score: float
    failures: int = 0


def grid_search(
    spec: AlgorithmSpec,
    graph: Graph,
    seed: int,
    workdir: Optional[Union[str, Path]] = None,
    ground_truth: Optional[Cover] = None,
) -> GridSearchResult:
    """Run every grid point and keep the one with the best selection score.

    The score is Newman modularity for partitions and Lazar modularity for
    overlapping covers. Grid points are visited in lexicographic order and
    only a strictly better score replaces the incumbent.

    Raises:
        AlgorithmTimeoutError: If every grid point timed out
        AlgorithmError: If every grid point failed
    """
    best: Optional[GridSearchResult] = None
    failures = []
    for params in expand_grid(spec.param_grid):
        try:
            cover = run_once(spec, graph, params, seed, workdir, ground_truth)
        except AlgorithmError as e:
            logger.debug("%s failed at %s: %s", spec.id, params, e)
            failures.append(e)
            continue
        score = selection_score(graph, cover)
        if best is None or score > best.score:
            best = GridSearchResult(params, cover, score)

    if best is None:
        if all(isinstance(e, AlgorithmTimeoutError) for e in failures):
            raise failures[-1]
        raise AlgorithmError(f"{spec.id}: all {len(failures)} grid points failed: {failures[-1]}")
    return GridSearchResult(best.params, best.cover, best.score, len(failures))


def run_algorithm(
    spec: AlgorithmSpec,
    graph: Graph,
    network: str,
    seed: int,
    workdir: Optional[Union[str, Path]] = None,
    ground_truth: Optional[Cover] = None,
) -> RunRecord:
    """Grid-search one registry entry on one network; failures become
    records instead of exceptions."""
    start = time.perf_counter()
    try:
        result = grid_search(spec, graph, seed, workdir, ground_truth)
        record = RunRecord(
            algorithm=spec.id,
            network=network,
            params=result.params,
            cover=result.cover,
            seconds=time.perf_counter() - start,
            score=result.score,
        )
    except AlgorithmTimeoutError as e:
        record = RunRecord(
            spec.id, network, {}, None, time.perf_counter() - start, "timeout", message=str(e)
        )
    except Exception as e:  # noqa: BLE001
        record = RunRecord(
            spec.id, network, {}, None, time.perf_counter() - start, "failed", message=str(e)
        )

    if not record.ok:
        logger.warning("%s on %s: %s (%s)", spec.id, network, record.status, record.message)
    return record
