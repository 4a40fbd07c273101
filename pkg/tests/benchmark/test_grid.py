"""Tests for benchmark grids and benchmark directories."""

from asn_maker.benchmark.grid import (
    benchmark_grid,
    benchmark_id,
    full_grid,
    grid_summary,
    iter_benchmark_files,
    read_manifest,
    write_benchmark,
    write_manifest,
)
from asn_maker.benchmark.lfr import generate_lfr
from asn_maker.graph.io import read_cover_file, read_graph_file


def test_full_grid_size():
    specs = full_grid(seed=1)
    assert len(specs) == 960
    assert len({spec.id for spec in specs}) == 960


def test_modes_share_seeds():
    specs = benchmark_grid([50], [0.1], 2, seed=3)
    by_id = {spec.id: spec for spec in specs}
    disjoint = by_id[benchmark_id("disjoint", 50, 0.1, 1)]
    overlapping = by_id[benchmark_id("overlapping", 50, 0.1, 1)]
    assert disjoint.params.seed == overlapping.params.seed
    assert overlapping.params.o_n == 5
    assert disjoint.params.o_n == 0


def test_grid_seeds_are_stable_under_extension():
    small = {s.id: s.params.seed for s in benchmark_grid([50], [0.1], 1, seed=3)}
    large = {s.id: s.params.seed for s in benchmark_grid([50, 60], [0.1, 0.2], 2, seed=3)}
    assert all(large[key] == seed for key, seed in small.items())


def test_benchmark_id_format():
    assert benchmark_id("disjoint", 50, 0.07, 3) == "lfr_disjoint_n050_mu0.07_r03"


def test_write_and_read_back(tmp_path):
    specs = benchmark_grid([50], [0.1], 1, modes=["overlapping"], seed=2)
    rows = []
    for spec in specs:
        benchmark = generate_lfr(spec.params)
        rows.append(write_benchmark(spec, benchmark, tmp_path))
    write_manifest(rows, tmp_path)

    files = list(iter_benchmark_files(tmp_path))
    assert [f.name for f in files] == [f"{specs[0].id}.edges"]
    graph = read_graph_file(files[0])
    assert graph.edges == benchmark.graph.edges
    assert graph.digest() == benchmark.graph.digest()
    truth = read_cover_file(tmp_path / f"{specs[0].id}.edges.gt", graph.n)
    assert truth.canonical() == benchmark.ground_truth.canonical()

    manifest = read_manifest(tmp_path)
    assert manifest.loc[0, "id"] == specs[0].id
    assert manifest.loc[0, "edges"] == benchmark.graph.m
    summary = grid_summary(manifest)
    assert list(summary.columns) == ["mode", "n", "mu", "mean_degree", "realized_mu"]
