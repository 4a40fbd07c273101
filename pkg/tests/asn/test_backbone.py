"""Tests for noise-corrected scores, threshold selection and backboning."""

import logging
import math
from itertools import combinations

import numpy as np
import pytest

from asn_maker.asn.backbone import backbone, nc_score, select_delta
from asn_maker.asn.network import AsnNet
from asn_maker.core.errors import ContractError


def scored(scores, weights=None):
    """A network whose scores are given directly."""
    weights = weights or {p: 1.0 for p in scores}
    net = AsnNet.from_weights(weights)
    return AsnNet(net.nodes, net.weights, dict(scores))


def random_asn(seed):
    """Random weighted ASN on 5 to 12 algorithms; a weighted path keeps every
    node connected."""
    rng = np.random.default_rng(seed)
    names = [f"alg{i:02d}" for i in range(int(rng.integers(5, 13)))]
    weights = {p: float(rng.integers(0, 8)) for p in combinations(names, 2)}
    for a, b in zip(names, names[1:]):
        weights[(a, b)] = max(weights[(a, b)], 1.0)
    return AsnNet.from_weights(weights)


def direct_score(w, s_i, s_j, grand):
    expected = s_i * s_j / grand
    variance = expected * (1 - s_i / grand) * (grand - s_j) / (grand - 1)
    return (w - expected) / math.sqrt(variance + 1.0)


class TestNcScore:
    def test_three_node_fixture(self):
        net = nc_score(AsnNet.from_weights({("A", "B"): 10, ("B", "C"): 1, ("C", "A"): 1}))
        # Strengths A=11, B=11, C=2; sum of strengths 24
        assert net.score("A", "B") == pytest.approx(direct_score(10, 11, 11, 24))
        assert net.score("B", "C") == pytest.approx(direct_score(1, 11, 2, 24))
        assert net.score("A", "C") == pytest.approx(direct_score(1, 11, 2, 24))
        assert net.score("A", "B") > net.score("B", "C") > 0

    def test_equal_weights_equal_scores(self):
        names = ["a", "b", "c", "d"]
        net = nc_score(AsnNet.from_weights({p: 3.0 for p in combinations(names, 2)}))
        values = list(net.scores.values())
        assert max(values) == pytest.approx(min(values))

    def test_listed_zero_weight_scores_below_expectation(self):
        net = nc_score(AsnNet.from_weights({("a", "b"): 4, ("b", "c"): 2, ("a", "c"): 0}))
        assert net.score("a", "c") <= 0

    def test_relabeling_invariant(self):
        weights = {("a", "b"): 5, ("b", "c"): 2, ("c", "d"): 7, ("a", "d"): 1}
        renamed = {("w", "x"): 5, ("x", "y"): 2, ("y", "z"): 7, ("w", "z"): 1}
        first = nc_score(AsnNet.from_weights(weights))
        second = nc_score(AsnNet.from_weights(renamed))
        assert sorted(first.scores.values()) == pytest.approx(sorted(second.scores.values()))

    def test_zero_total_rejected(self):
        with pytest.raises(ValueError, match="positive total weight"):
            nc_score(AsnNet.from_weights({("a", "b"): 0.0}))


class TestSelectDelta:
    def test_star(self):
        net = scored({("c", "l1"): 5.0, ("c", "l2"): 3.0, ("c", "l3"): 2.0})
        delta = select_delta(net)
        assert delta == 2.0
        assert len(backbone(net, delta).edges) == 3

    def test_triangle(self):
        net = scored({("A", "B"): 10.0, ("B", "C"): 8.0, ("A", "C"): 1.0})
        delta = select_delta(net)
        assert delta == 8.0
        assert backbone(net, delta).edges == [("A", "B"), ("B", "C")]

    def test_fewest_edges_with_min_degree_one(self):
        weights = {("a", "b"): 6, ("a", "c"): 1, ("b", "c"): 2, ("c", "d"): 5, ("b", "d"): 1}
        net = nc_score(AsnNet.from_weights(weights))
        delta = select_delta(net)
        chosen = backbone(net, delta)
        assert min(chosen.degrees().values()) >= 1
        for threshold in sorted(set(net.scores.values())):
            candidate = backbone(net, threshold)
            if min(candidate.degrees().values()) >= 1:
                assert len(candidate.edges) >= len(chosen.edges)

    @pytest.mark.parametrize("seed", range(50))
    def test_exhaustive_sweep_on_random_networks(self, seed):
        net = nc_score(random_asn(seed))
        delta = select_delta(net)
        chosen = backbone(net, delta)
        assert min(chosen.degrees().values()) >= 1

        for threshold in sorted(set(net.scores.values())):
            candidate = backbone(net, threshold)
            valid = min(candidate.degrees().values()) >= 1
            assert valid == (threshold <= delta)
            if valid:
                assert len(candidate.edges) >= len(chosen.edges)

    def test_isolated_node_rejected(self):
        net = AsnNet(("a", "b", "c"), {("a", "b"): 1.0}, {("a", "b"): 1.0})
        with pytest.raises(ContractError, match="isolated"):
            select_delta(net)

    def test_unscored_rejected(self):
        with pytest.raises(ContractError):
            select_delta(AsnNet.from_weights({("a", "b"): 1.0}))

    def test_unweighted_network_rejected(self):
        with pytest.raises(ContractError, match="at least one weighted pair"):
            select_delta(AsnNet(("louvain",), {}, {}))


class TestBackbone:
    def test_minus_infinity_is_identity(self):
        net = nc_score(AsnNet.from_weights({("a", "b"): 3, ("b", "c"): 1, ("a", "c"): 0}))
        result = backbone(net, -math.inf)
        assert result.weights == net.weights
        assert result.delta == -math.inf

    def test_above_max_empties_and_warns(self, caplog):
        caplog.set_level(logging.WARNING, logger="asn_maker.asn.backbone")
        net = scored({("a", "b"): 1.0, ("b", "c"): 2.0})
        result = backbone(net, 2.5)
        assert result.edges == []
        assert result.nodes == ("a", "b", "c")
        assert "isolates 3 node(s)" in caplog.text

    def test_records_delta_and_scores(self):
        net = scored({("a", "b"): 1.0, ("b", "c"): 2.0})
        result = backbone(net, 1.0)
        assert result.delta == 1.0
        assert result.scores == {("a", "b"): 1.0, ("b", "c"): 2.0}
