"""Tests for similarity matrices and the per-network store."""

import numpy as np
import pandas as pd
import pytest

from asn_maker.asn.similarity import GROUND_TRUTH, SimilarityStore, build_similarity
from asn_maker.graph.model import Cover


def test_build_similarity():
    halves = Cover.from_communities([{0, 1, 2}, {3, 4, 5}], 6)
    split = Cover.from_communities([{0, 2, 4}, {1, 3, 5}], 6)
    matrix = build_similarity({"b": halves, "a": halves, "c": split}, "MAX", ground_truth=halves)

    assert list(matrix.index) == ["a", "b", "c", GROUND_TRUTH]
    assert list(matrix.columns) == list(matrix.index)
    assert matrix.loc["a", "b"] == pytest.approx(1.0)
    assert matrix.loc["a", GROUND_TRUTH] == pytest.approx(1.0)
    assert matrix.loc["a", "c"] < 1.0
    assert np.allclose(matrix.to_numpy(), matrix.to_numpy().T)


class TestStore:
    def test_add_validates(self, make_store):
        store = make_store(["a", "b"])
        good = store.matrix("net0")
        with pytest.raises(ValueError, match="kind"):
            store.add("x", good, kind="weird")
        with pytest.raises(ValueError, match="different algorithms"):
            store.add("x", good.loc[:, ["b", "a"]])
        asymmetric = good.copy()
        asymmetric.loc["a", "b"] = 0.0
        asymmetric.loc["b", "a"] = 0.9
        with pytest.raises(ValueError, match="symmetric"):
            store.add("x", asymmetric)
        out_of_range = pd.DataFrame([[1.0, 1.5], [1.5, 1.0]], index=["a", "b"], columns=["a", "b"])
        with pytest.raises(ValueError, match=r"\[0, 1\]"):
            store.add("x", out_of_range)
        assert "x" not in store

    def test_iteration_and_algorithms(self, make_store):
        store = make_store(["b", "a"], networks=2)
        store.add("extra", pd.DataFrame([[1.0]], index=["z"], columns=["z"]), kind="real")
        assert len(store) == 3
        assert list(store) == ["extra", "net0", "net1"]
        assert store.algorithms == ["a", "b", "z"]
        assert store.kind("extra") == "real"

    def test_restrict_and_ground_truth(self, make_store):
        store = make_store(["a", "b", GROUND_TRUTH])
        restricted = store.restrict(["a", GROUND_TRUTH])
        assert list(restricted.matrix("net0").index) == ["a", GROUND_TRUTH]
        assert store.without_ground_truth().algorithms == ["a", "b"]
        assert len(store.without_ground_truth()) == len(store)

    def test_by_kind(self, make_store):
        store = make_store(["a", "b"], networks=2)
        store.add("road", store.matrix("net0"), kind="real")
        assert list(store.by_kind("real")) == ["road"]
        assert list(store.by_kind("synthetic")) == ["net0", "net1"]

    def test_save_and_load(self, tmp_path, make_store):
        store = make_store(["alpha", "beta", "gamma"], networks=2)
        store.add("road", store.matrix("net1"), kind="real")
        store.save(tmp_path / "similarity")

        loaded = SimilarityStore.load(tmp_path / "similarity")
        assert list(loaded) == list(store)
        assert loaded.kind("road") == "real"
        for network, matrix in store.items():
            assert list(loaded.matrix(network).index) == list(matrix.index)
            assert np.allclose(loaded.matrix(network).to_numpy(), matrix.to_numpy())

    def test_numeric_looking_ids_stay_strings(self, tmp_path):
        store = SimilarityStore()
        names = ["007", "101", "kclique"]
        store.add("net0", pd.DataFrame(np.eye(3), index=names, columns=names))
        store.save(tmp_path)

        matrix = SimilarityStore.load(tmp_path).matrix("net0")
        assert list(matrix.index) == names
        assert list(matrix.columns) == names
