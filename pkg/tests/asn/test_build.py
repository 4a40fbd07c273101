"""Tests for mutual top-k counting and the alternative aggregations."""

from itertools import combinations

import numpy as np
import pandas as pd
import pytest

from asn_maker.asn.build import (
    accumulate,
    aggregate_average,
    aggregate_threshold,
    mutual_topk,
    top_peers,
)
from asn_maker.asn.similarity import SimilarityStore
from tests.conftest import random_similarity

NAMES = [f"a{i}" for i in range(10)]


def matrix(values, names):
    frame = pd.DataFrame(np.eye(len(names)), index=names, columns=names)
    for (a, b), value in values.items():
        frame.loc[a, b] = frame.loc[b, a] = value
    return frame


def brute_force(frame, k):
    """Rank peers by explicit counting of strictly better peers."""
    result = set()
    names = list(frame.index)

    def in_top(a, b):
        better = sum(1 for c in names if c not in (a, b) and frame.at[a, c] > frame.at[a, b])
        return better < k

    for a, b in combinations(names, 2):
        if in_top(a, b) and in_top(b, a):
            result.add((a, b) if a < b else (b, a))
    return result


def test_fewer_peers_than_k():
    frame = matrix({("x", "y"): 0.1, ("x", "z"): 0.2, ("y", "z"): 0.3}, ["x", "y", "z"])
    assert mutual_topk(frame, 5) == {("x", "y"), ("x", "z"), ("y", "z")}


def test_agreement_must_be_mutual():
    frame = matrix(
        {("a1", "a2"): 0.9, ("a2", "a3"): 0.95, ("a1", "a3"): 0.1},
        ["a1", "a2", "a3"],
    )
    assert mutual_topk(frame, 1) == {("a2", "a3")}


def test_ties_at_rank_k_included():
    frame = matrix(
        {("a", "b"): 0.5, ("a", "c"): 0.5, ("b", "c"): 0.2},
        ["a", "b", "c"],
    )
    assert top_peers(frame, 1)["a"] == {"b", "c"}


@pytest.mark.parametrize("seed", range(5))
@pytest.mark.parametrize("k", [1, 3, 5])
def test_matches_brute_force(seed, k):
    frame = random_similarity(NAMES, seed)
    assert mutual_topk(frame, k) == brute_force(frame, k)


def test_k_below_one():
    with pytest.raises(ValueError):
        mutual_topk(random_similarity(NAMES, 0), 0)


def test_accumulate_counts_networks(make_store):
    store = make_store(NAMES, networks=4, seed=3)
    net = accumulate(store, k=3)
    for a, b in combinations(NAMES, 2):
        expected = sum(
            1 for _, frame in store.items() if (a, b) in brute_force(frame, 3)
        )
        assert net.weight(a, b) == expected
    assert net.nodes == tuple(NAMES)


def test_single_network_weights_are_binary(make_store):
    net = accumulate(make_store(NAMES, networks=1), k=2)
    assert set(net.weights.values()) <= {0.0, 1.0}


def test_clones_always_agree():
    store = SimilarityStore()
    names = ["clone_a", "clone_b", "other", "third"]
    for index in range(5):
        values = random_similarity(names, index).to_numpy() * 0.5
        np.fill_diagonal(values, 1.0)
        values[0, 1] = values[1, 0] = 1.0
        store.add(f"net{index}", pd.DataFrame(values, index=names, columns=names))
    assert accumulate(store, k=1).weight("clone_a", "clone_b") == 5


def test_missing_algorithms_do_not_count():
    store = SimilarityStore()
    store.add("n1", random_similarity(["a", "b", "c"], 1))
    store.add("n2", random_similarity(["a", "b"], 2))
    net = accumulate(store, k=5)
    assert net.weight("a", "b") == 2
    assert net.weight("a", "c") == 1


def test_average():
    store = SimilarityStore()
    store.add("n1", matrix({("a", "b"): 0.2, ("a", "c"): 1.0, ("b", "c"): 0.0}, ["a", "b", "c"]))
    store.add("n2", matrix({("a", "b"): 0.6}, ["a", "b"]))
    net = aggregate_average(store)
    assert net.weight("a", "b") == pytest.approx(0.4)
    assert net.weight("a", "c") == pytest.approx(1.0)
    assert net.weight("b", "c") == 0.0


def test_threshold():
    store = SimilarityStore()
    store.add("n1", matrix({("a", "b"): 0.7, ("a", "c"): 0.5, ("b", "c"): 0.2}, ["a", "b", "c"]))
    store.add("n2", matrix({("a", "b"): 0.9, ("a", "c"): 0.4, ("b", "c"): 0.6}, ["a", "b", "c"]))
    net = aggregate_threshold(store, 0.5)
    assert net.weight("a", "b") == 2
    assert net.weight("a", "c") == 0
    assert net.weight("b", "c") == 1
    assert aggregate_threshold(store, 1.0).edges == []


@pytest.mark.parametrize("tau", [-0.1, 1.1])
def test_threshold_out_of_range(tau):
    with pytest.raises(ValueError):
        aggregate_threshold(SimilarityStore(), tau)
