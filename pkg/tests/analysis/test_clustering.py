"""Tests for clustering the ASN."""

import pytest

from asn_maker.analysis.clustering import cluster_asn, write_cover_labels
from asn_maker.asn.network import AsnNet


@pytest.fixture
def two_blocks():
    """Two 4-cliques of algorithms joined by one light edge."""
    weights = {}
    for block in ("a", "b"):
        names = [f"{block}{i}" for i in range(1, 5)]
        for i, x in enumerate(names):
            for y in names[i + 1:]:
                weights[(x, y)] = 5.0
    weights[("a4", "b1")] = 1.0
    return AsnNet.from_weights(weights)


def test_blocks_become_communities(two_blocks):
    clustering = cluster_asn(two_blocks, "infomap_2l", seed=1)
    found = {frozenset(c) for c in clustering.communities}
    assert found == {frozenset({"a1", "a2", "a3", "a4"}), frozenset({"b1", "b2", "b3", "b4"})}
    assert clustering.clusterer == "infomap_2l"
    assert clustering.codelength < clustering.codelength_one_module
    assert clustering.codelength < clustering.codelength_singletons


def test_memberships(two_blocks):
    clustering = cluster_asn(two_blocks, "louvain", seed=1)
    (home,) = clustering.memberships("a2")
    assert "a1" in clustering.communities[home]
    assert "b2" not in clustering.communities[home]


def test_edgeless_asn_has_no_codelengths():
    net = AsnNet.from_weights({}, nodes=["x", "y", "z"])
    clustering = cluster_asn(net, "infomap_2l")
    assert clustering.communities == [["x"], ["y"], ["z"]]
    assert clustering.codelength is None
    assert clustering.codelength_one_module is None


def test_write_cover_labels(tmp_path, two_blocks):
    clustering = cluster_asn(two_blocks, "infomap_2l", seed=1)
    path = write_cover_labels(clustering, tmp_path / "asn.cover")
    lines = sorted(path.read_text().splitlines())
    assert lines == ["a1 a2 a3 a4", "b1 b2 b3 b4"]
