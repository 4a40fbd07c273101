"""Tests for the asn-maker command line."""

import json

import pytest

from asn_maker.cli.main import (
    EXIT_CONFIG,
    EXIT_OK,
    EXIT_STAGE,
    build_parser,
    load_settings,
    main,
)


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "config.toml"
    path.write_text(
        "[benchmarks]\nn_values = [50]\nmu_values = [0.1]\nrepeats = 1\n"
        'modes = ["disjoint"]\n\n[run]\nseed = 3\n',
        encoding="utf-8",
    )
    return path


def test_parser_lists():
    args = build_parser().parse_args(
        ["gen-bench", "--n-values", "50,60", "--mu-values", "0.1, 0.2", "--modes", "disjoint"]
    )
    assert args.command == "gen-bench"
    assert args.n_values == [50, 60]
    assert args.mu_values == [0.1, 0.2]
    assert args.modes == ["disjoint"]
    assert args.delta is None


def test_parser_delta():
    parser = build_parser()
    assert parser.parse_args(["backbone", "--delta", "auto"]).delta == "auto"
    assert parser.parse_args(["backbone", "--delta", "1.5"]).delta == 1.5


def test_parser_requires_command():
    with pytest.raises(SystemExit):
        build_parser().parse_args([])


def test_flags_override_file(config_file, tmp_path):
    args = build_parser().parse_args(
        ["run", "-c", str(config_file), "--seed", "9", "--variant", "lfk", "-v"]
    )
    config = load_settings(args)
    assert config.n_values == [50]
    assert config.seed == 9
    assert config.onmi_variant == "LFK"
    assert config.log_level == "DEBUG"


def test_gen_bench(config_file, tmp_path):
    out = tmp_path / "artifacts"
    code = main(["gen-bench", "-c", str(config_file), "-o", str(out)])
    assert code == EXIT_OK
    assert (out / "benchmarks" / "manifest.csv").exists()
    assert len(list((out / "benchmarks").glob("*.edges"))) == 1


def test_invalid_flag_value(config_file, tmp_path):
    code = main(["run", "-c", str(config_file), "-o", str(tmp_path), "--variant", "median"])
    assert code == EXIT_CONFIG


def test_unknown_config_key(tmp_path):
    path = tmp_path / "bad.toml"
    path.write_text("[run]\nturbo = true\n", encoding="utf-8")
    assert main(["pipeline", "-c", str(path)]) == EXIT_CONFIG


@pytest.mark.parametrize("command", ["run", "similarity", "rank-gt", "analyze"])
def test_missing_inputs_fail_the_stage(command, config_file, tmp_path):
    out = tmp_path / "empty"
    assert main([command, "-c", str(config_file), "-o", str(out)]) == EXIT_STAGE
    assert (out / "errors.jsonl").exists()


@pytest.mark.parametrize(
    "row",
    ["louvain\tnotakind\t\t600\t{}", "louvain\tbuiltin\t\t600\t{not json"],
)
def test_malformed_registry_is_a_config_error(row, config_file, tmp_path):
    out = tmp_path / "artifacts"
    registry = tmp_path / "bad.tsv"
    registry.write_text(f"id\tkind\tcommand_template\ttimeout\tparam_grid\n{row}\n", "utf-8")
    assert main(["gen-bench", "-c", str(config_file), "-o", str(out)]) == EXIT_OK

    code = main(["run", "-c", str(config_file), "-o", str(out), "--registry", str(registry)])

    assert code == EXIT_CONFIG
    entry = json.loads((out / "errors.jsonl").read_text().splitlines()[-1])
    assert entry["stage"] == "run"
    assert entry["error"] == "ConfigError"
