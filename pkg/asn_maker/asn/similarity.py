"""Per-network similarity matrices between detector outputs.

A SimilarityStore maps every network id to a symmetric pandas DataFrame of
oNMI scores indexed by algorithm id. Only algorithms whose run succeeded on
a network appear in its matrix; the planted cover may be included under
the pseudo-algorithm id GROUND_TRUTH.
"""

from itertools import combinations
from pathlib import Path
from typing import Dict, Iterable, Iterator, List, Mapping, Optional, Union

import numpy as np
import pandas as pd

from asn_maker.core.logging import get_logger
from asn_maker.graph.model import Cover
from asn_maker.metrics.onmi import OnmiVariant, onmi

logger = get_logger("asn.similarity")

GROUND_TRUTH = "ground_truth"
INDEX_FILE = "networks.csv"
KINDS = ("synthetic", "real")


def build_similarity(
    covers: Mapping[str, Cover],
    variant: Union[str, OnmiVariant] = "MAX",
    ground_truth: Optional[Cover] = None,
) -> pd.DataFrame:
    """oNMI matrix over the given covers of one network.

    Args:
        covers: Cover per algorithm id
        variant: oNMI normalization
        ground_truth: Planted cover, added as GROUND_TRUTH when given
    """
    covers = dict(covers)
    if ground_truth is not None:
        covers[GROUND_TRUTH] = ground_truth
    names = sorted(covers)
    matrix = np.eye(len(names))
    for i, j in combinations(range(len(names)), 2):
        matrix[i, j] = matrix[j, i] = onmi(covers[names[i]], covers[names[j]], variant)
    return pd.DataFrame(matrix, index=names, columns=names)


class SimilarityStore:
    """Similarity matrices of all networks, with the network kind of each."""

    def __init__(self) -> None:
        self._matrices: Dict[str, pd.DataFrame] = {}
        self._kinds: Dict[str, str] = {}

    def add(self, network: str, matrix: pd.DataFrame, kind: str = "synthetic") -> None:
        """Register one network's matrix.

        Raises:
            ValueError: If the matrix is not a valid similarity matrix
        """
        if kind not in KINDS:
            raise ValueError(f"unknown network kind '{kind}'")
        if list(matrix.index) != list(matrix.columns):
            raise ValueError(f"{network}: rows and columns name different algorithms")
        values = matrix.to_numpy(dtype=float)
        if not np.allclose(values, values.T) or not np.allclose(np.diag(values), 1.0):
            raise ValueError(f"{network}: matrix must be symmetric with unit diagonal")
        if values.min(initial=0.0) < 0.0 or values.max(initial=0.0) > 1.0:
            raise ValueError(f"{network}: similarities must lie in [0, 1]")
        self._matrices[network] = matrix
        self._kinds[network] = kind

    def __len__(self) -> int:
        return len(self._matrices)

    def __iter__(self) -> Iterator[str]:
        return iter(sorted(self._matrices))

    def __contains__(self, network: object) -> bool:
        return network in self._matrices

    def matrix(self, network: str) -> pd.DataFrame:
        return self._matrices[network]

    def kind(self, network: str) -> str:
        return self._kinds[network]

    def items(self) -> Iterator:
        for network in self:
            yield network, self._matrices[network]

    @property
    def algorithms(self) -> List[str]:
        """Every algorithm id present in at least one matrix."""
        names = set()
        for matrix in self._matrices.values():
            names.update(matrix.index)
        return sorted(names)

    def _derive(self, select) -> "SimilarityStore":
        store = SimilarityStore()
        for network, matrix in self.items():
            keep = select(network, matrix)
            if keep is None:
                continue
            store._matrices[network] = matrix.loc[keep, keep]
            store._kinds[network] = self._kinds[network]
        return store

    def restrict(self, algorithms: Iterable[str]) -> "SimilarityStore":
        """The same networks with matrices reduced to the given algorithms."""
        wanted = set(algorithms)
        return self._derive(
            lambda network, matrix: [a for a in matrix.index if a in wanted]
        )

    def without_ground_truth(self) -> "SimilarityStore":
        return self._derive(
            lambda network, matrix: [a for a in matrix.index if a != GROUND_TRUTH]
        )

    def by_kind(self, kind: str) -> "SimilarityStore":
        """Only the networks of one kind."""
        return self._derive(
            lambda network, matrix: list(matrix.index) if self._kinds[network] == kind else None
        )

    def save(self, directory: Union[str, Path]) -> Path:
        """One CSV per network plus an index of network kinds."""
        directory = Path(directory)
        directory.mkdir(parents=True, exist_ok=True)
        for network, matrix in self.items():
            matrix.to_csv(directory / f"{network}.csv", float_format="%.10g")
        index = pd.DataFrame(
            {"network": list(self), "kind": [self._kinds[n] for n in self]},
            columns=["network", "kind"],
        )
        index.to_csv(directory / INDEX_FILE, index=False)
        return directory

    @classmethod
    def load(cls, directory: Union[str, Path]) -> "SimilarityStore":
        directory = Path(directory)
        store = cls()
        index = pd.read_csv(directory / INDEX_FILE, dtype=str, keep_default_na=False)
        for network, kind in zip(index["network"], index["kind"]):
            # Algorithm ids stay strings even when they look numeric
            frame = pd.read_csv(directory / f"{network}.csv", dtype=str, keep_default_na=False)
            matrix = frame.set_index(frame.columns[0]).astype(float)
            matrix.index.name = None
            store.add(network, matrix, kind)
        logger.debug("Loaded %d similarity matrices from %s", len(store), directory)
        return store
