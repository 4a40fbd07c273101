"""Pytest configuration for ASN Maker tests.

Shared graph fixtures and helpers for building similarity stores.
"""

import itertools

import numpy as np
import pandas as pd
import pytest

from asn_maker.core.config import ConfigManager
from asn_maker.core.events import EventManager
from asn_maker.graph.model import Cover, Graph


@pytest.fixture(autouse=True)
def reset_singletons():
    """Fresh configuration and event managers for every test."""
    ConfigManager._reset_for_testing()
    EventManager._reset_for_testing()
    yield
    EventManager._reset_for_testing()


@pytest.fixture
def two_cliques():
    """Two 4-cliques {0..3} and {4..7} joined by the bridge (3, 4)."""
    edges = list(itertools.combinations(range(4), 2))
    edges += list(itertools.combinations(range(4, 8), 2))
    edges.append((3, 4))
    return Graph.from_edges(8, edges)


@pytest.fixture
def two_cliques_cover():
    return Cover.from_communities([{0, 1, 2, 3}, {4, 5, 6, 7}], 8)


@pytest.fixture
def ring4():
    """The 4-cycle 0-1-2-3-0."""
    return Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 3)])


@pytest.fixture
def two_triangles():
    """Triangles {0, 1, 2} and {3, 4, 5} joined by the edge (2, 3)."""
    return Graph.from_edges(6, [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (2, 3)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


@pytest.fixture
def path5():
    return path_graph(5)


def random_similarity(algorithms, seed: int) -> pd.DataFrame:
    """A valid symmetric similarity matrix with unit diagonal."""
    rng = np.random.default_rng(seed)
    size = len(algorithms)
    values = rng.uniform(0.0, 1.0, size=(size, size))
    values = (values + values.T) / 2.0
    np.fill_diagonal(values, 1.0)
    return pd.DataFrame(values, index=list(algorithms), columns=list(algorithms))


@pytest.fixture
def make_store():
    """Factory for a SimilarityStore of random matrices."""
    from asn_maker.asn.similarity import SimilarityStore

    def factory(algorithms, networks=3, seed=0, kind="synthetic"):
        store = SimilarityStore()
        for index in range(networks):
            store.add(f"net{index}", random_similarity(algorithms, seed + index), kind)
        return store

    return factory
