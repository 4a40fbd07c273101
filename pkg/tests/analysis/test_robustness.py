"""Tests for robustness comparisons and ASN statistics."""

import logging
import math

import numpy as np
import pandas as pd
import pytest

from asn_maker.analysis.clustering import cluster_asn
from asn_maker.analysis.robustness import (
    aggregation_agreement,
    asn_statistics,
    auto_backbone,
    partition_agreement,
    sub_asn,
    synthetic_vs_real_correlation,
    variant_correlations,
    weight_correlation,
)
from asn_maker.asn.build import accumulate
from asn_maker.asn.network import AsnNet
from asn_maker.asn.similarity import SimilarityStore
from asn_maker.core.errors import ContractError

BLOCK_A = ["a1", "a2", "a3", "a4"]
BLOCK_B = ["b1", "b2", "b3", "b4"]


def block_matrix(strong=0.9, weak=0.1):
    names = BLOCK_A + BLOCK_B
    values = np.full((8, 8), weak)
    values[:4, :4] = strong
    values[4:, 4:] = strong
    np.fill_diagonal(values, 1.0)
    return pd.DataFrame(values, index=names, columns=names)


@pytest.fixture
def block_store():
    store = SimilarityStore()
    for index in range(3):
        store.add(f"net{index}", block_matrix())
    return store


def pairs_matrix(*pairs):
    """Four algorithms, 0.9 on the given pairs and 0.1 elsewhere."""
    names = ["a", "b", "c", "d"]
    frame = pd.DataFrame(np.full((4, 4), 0.1), index=names, columns=names)
    for x, y in pairs:
        frame.loc[x, y] = frame.loc[y, x] = 0.9
    for name in names:
        frame.loc[name, name] = 1.0
    return frame


def test_weight_correlation():
    a = AsnNet.from_weights({("x", "y"): 1, ("y", "z"): 2, ("x", "z"): 3})
    b = AsnNet.from_weights({("x", "y"): 2, ("y", "z"): 4, ("x", "z"): 6})
    assert weight_correlation(a, b) == pytest.approx(1.0)
    reversed_b = AsnNet.from_weights({("x", "y"): 3, ("y", "z"): 2, ("x", "z"): 1})
    assert weight_correlation(a, reversed_b) == pytest.approx(-1.0)


def test_weight_correlation_rejects_mismatch():
    a = AsnNet.from_weights({("x", "y"): 1, ("y", "z"): 2})
    with pytest.raises(ValueError, match="same algorithms"):
        weight_correlation(a, AsnNet.from_weights({("x", "y"): 1, ("y", "w"): 2}))
    with pytest.raises(ValueError, match="two weighted pairs"):
        weight_correlation(
            AsnNet.from_weights({("x", "y"): 1, ("y", "z"): 0}),
            AsnNet.from_weights({("x", "y"): 1, ("y", "z"): 0}),
        )


def test_identical_uniform_weights_correlate_perfectly():
    net = AsnNet.from_weights({("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 1})
    assert weight_correlation(net, net) == 1.0


def test_uniform_against_varied_weights_rejected():
    uniform = AsnNet.from_weights({("a", "b"): 1, ("b", "c"): 1, ("a", "c"): 1})
    varied = AsnNet.from_weights({("a", "b"): 1, ("b", "c"): 2, ("a", "c"): 3})
    with pytest.raises(ContractError, match="uniform"):
        weight_correlation(uniform, varied)


def test_partition_agreement():
    nodes = ["a", "b", "c", "d"]
    assert partition_agreement([["a", "b"], ["c", "d"]], [["d", "c"], ["b", "a"]], nodes) == (
        pytest.approx(1.0)
    )
    assert partition_agreement([["a", "b"], ["c", "d"]], [["a", "c"], ["b", "d"]], nodes) < 1.0


def test_sub_asn(block_store):
    net = sub_asn(block_store, ["a1", "a2", "b1"], k=1)
    assert net.nodes == ("a1", "a2", "b1")
    assert net.scores is not None
    with pytest.raises(ValueError, match="two algorithms"):
        sub_asn(block_store, ["a1"])
    with pytest.raises(ContractError, match="'zz'"):
        sub_asn(block_store, ["a1", "zz"])


def test_variant_correlations():
    a = AsnNet.from_weights({("x", "y"): 1, ("y", "z"): 2, ("x", "z"): 3})
    b = AsnNet.from_weights({("x", "y"): 2, ("y", "z"): 4, ("x", "z"): 6})
    result = variant_correlations({"MAX": a, "LFK": b, "SUM": a})
    assert sorted(result) == ["LFK vs MAX", "LFK vs SUM", "MAX vs SUM"]
    assert all(value == pytest.approx(1.0) for value in result.values())


def test_synthetic_vs_real_correlation():
    store = SimilarityStore()
    for prefix, kind in (("syn", "synthetic"), ("real", "real")):
        store.add(f"{prefix}0", pairs_matrix(("a", "b"), ("c", "d")), kind)
        store.add(f"{prefix}1", pairs_matrix(("a", "c"), ("b", "d")), kind)
        store.add(f"{prefix}2", pairs_matrix(("a", "b"), ("c", "d")), kind)
    assert synthetic_vs_real_correlation(store, k=1) == pytest.approx(1.0)
    with pytest.raises(ContractError, match="both"):
        synthetic_vs_real_correlation(store.by_kind("synthetic"), k=1)


def test_auto_backbone_drops_isolated(caplog):
    caplog.set_level(logging.WARNING, logger="asn_maker.analysis.robustness")
    net = AsnNet.from_weights({("a", "b"): 3, ("b", "c"): 1, ("a", "c"): 2}, nodes=["z"])
    result = auto_backbone(net)
    assert result.nodes == ("a", "b", "c")
    assert result.isolated() == []
    assert "Dropping 1 algorithm(s)" in caplog.text


def test_aggregation_agreement(block_store):
    reference = cluster_asn(auto_backbone(accumulate(block_store, 3)), "infomap_2l", seed=0)
    assert len(reference.cover) == 2
    agreement = aggregation_agreement(block_store, reference, k=3, tau=0.5, seed=0)
    assert agreement == {"average": pytest.approx(1.0), "threshold": pytest.approx(1.0)}


def test_asn_statistics(block_store):
    net = auto_backbone(accumulate(block_store, 3))
    clustering = cluster_asn(net, "infomap_2l", seed=0)
    summary = asn_statistics(net, clustering)
    assert summary["nodes"] == 8
    assert summary["edges"] == 12
    assert summary["density"] == pytest.approx(12 / 28)
    assert summary["transitivity"] == pytest.approx(1.0)
    assert summary["components"] == 2
    assert summary["mean_weight"] == pytest.approx(3.0)
    assert summary["avg_path_length"] is None
    assert summary["asn_communities"] == 2
    assert math.isfinite(summary["delta"])
