"""Benchmark grids and on-disk benchmark sets.

A benchmark directory holds, per benchmark, ``<id>.edges`` (edge list) and
``<id>.edges.gt`` (planted cover), plus ``manifest.csv`` with one row of
parameters and realized statistics per benchmark.
"""

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Iterator, List, Sequence, Union

import pandas as pd

from asn_maker.benchmark.lfr import LfrBenchmark, LfrParams, default_params
from asn_maker.core.seeds import derive_seed
from asn_maker.graph.io import write_cover, write_graph

MANIFEST = "manifest.csv"
EDGES_SUFFIX = ".edges"
GROUND_TRUTH_SUFFIX = ".edges.gt"

FULL_N_VALUES = (50, 60, 70, 80, 90, 100)
FULL_MU_VALUES = (0.07, 0.09, 0.11, 0.13, 0.15, 0.17, 0.19, 0.21)
FULL_REPEATS = 10


@dataclass(frozen=True)
class BenchmarkSpec:
    """A named grid point."""

    id: str
    mode: str
    repeat: int
    params: LfrParams


def benchmark_id(mode: str, n: int, mu: float, repeat: int) -> str:
    return f"lfr_{mode}_n{n:03d}_mu{mu:.2f}_r{repeat:02d}"


def benchmark_grid(
    n_values: Sequence[int],
    mu_values: Sequence[float],
    repeats: int,
    modes: Sequence[str] = ("disjoint", "overlapping"),
    seed: int = 0,
    k_avg: float = 6.0,
) -> List[BenchmarkSpec]:
    """Enumerate a benchmark grid.

    Disjoint and overlapping benchmarks of the same cell and repeat share
    their seed, hence their degree sequence draw.
    """
    specs = []
    for mode in modes:
        for n in n_values:
            for mu in mu_values:
                for repeat in range(repeats):
                    cell_seed = derive_seed(seed, "lfr", n, f"{mu:.4f}", repeat)
                    params = default_params(
                        n, mu, mode == "overlapping", cell_seed, k_avg=k_avg
                    )
                    specs.append(
                        BenchmarkSpec(benchmark_id(mode, n, mu, repeat), mode, repeat, params)
                    )
    return specs


def full_grid(seed: int = 0) -> List[BenchmarkSpec]:
    """The full 2 x 10 x 6 x 8 grid of 960 benchmarks."""
    return benchmark_grid(FULL_N_VALUES, FULL_MU_VALUES, FULL_REPEATS, seed=seed)


def manifest_row(spec: BenchmarkSpec, benchmark: LfrBenchmark) -> dict:
    row = {"id": spec.id, "mode": spec.mode, "repeat": spec.repeat}
    row.update(spec.params.model_dump())
    row.update(
        {
            "realized_mu": benchmark.realized_mu,
            "mean_degree": benchmark.mean_degree,
            "edges": benchmark.graph.m,
            "communities": len(benchmark.ground_truth),
            "attempts": benchmark.attempts,
        }
    )
    return row


def write_benchmark(
    spec: BenchmarkSpec, benchmark: LfrBenchmark, directory: Union[str, Path]
) -> dict:
    """Write the edge list and planted cover; return the manifest row."""
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / f"{spec.id}{EDGES_SUFFIX}").write_bytes(write_graph(benchmark.graph))
    (directory / f"{spec.id}{GROUND_TRUTH_SUFFIX}").write_bytes(
        write_cover(benchmark.ground_truth)
    )
    return manifest_row(spec, benchmark)


def write_manifest(rows: Iterable[dict], directory: Union[str, Path]) -> Path:
    """Write manifest.csv sorted by benchmark id."""
    path = Path(directory) / MANIFEST
    frame = pd.DataFrame(list(rows))
    if not frame.empty:
        frame = frame.sort_values("id").reset_index(drop=True)
    frame.to_csv(path, index=False, float_format="%.10g")
    return path


def read_manifest(directory: Union[str, Path]) -> pd.DataFrame:
    return pd.read_csv(Path(directory) / MANIFEST)


def grid_summary(manifest: pd.DataFrame) -> pd.DataFrame:
    """Per (mode, n, mu) cell: mean realized degree and mixing."""
    return (
        manifest.groupby(["mode", "n", "mu"])[["mean_degree", "realized_mu"]]
        .mean()
        .reset_index()
    )


def iter_benchmark_files(directory: Union[str, Path]) -> Iterator[Path]:
    """Edge-list files of a benchmark directory, sorted by name."""
    yield from sorted(Path(directory).glob(f"*{EDGES_SUFFIX}"))
