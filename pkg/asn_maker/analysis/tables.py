"""Per-community tables of algorithm categories and output statistics."""

from dataclasses import asdict
from typing import Dict, Iterable, List, Mapping, Sequence

import numpy as np
import pandas as pd
from scipy import stats

from asn_maker.algorithms.registry import FLAGS, RunRecord
from asn_maker.core.errors import ContractError
from asn_maker.graph.model import Graph
from asn_maker.metrics.community import community_profile

FEATURE_COLUMNS = {
    "overlapping": "Over",
    "spreading": "Spr",
    "modularity_based": "Q",
    "nsim": "NSim",
}
STAT_COLUMNS = [
    "communities",
    "mean_size",
    "mean_density",
    "modularity",
    "mean_conductance",
    "mean_ncut",
]


def feature_table(communities: Sequence[Sequence[str]], metadata: pd.DataFrame) -> pd.DataFrame:
    """Fraction of each category flag per ASN community.

    Args:
        communities: Algorithm ids per community; an algorithm in several
            communities counts in all of them
        metadata: Flag columns indexed by algorithm id

    Raises:
        ContractError: If an algorithm has no metadata row
    """
    rows = []
    for number, members in enumerate(communities, start=1):
        missing = [a for a in members if a not in metadata.index]
        if missing:
            raise ContractError(f"no category metadata for algorithm '{missing[0]}'")
        flags = metadata.loc[list(members), list(FLAGS)].astype(bool)
        row: Dict[str, object] = {"community": number, "n": len(members)}
        for flag, column in FEATURE_COLUMNS.items():
            row[column] = float(flags[flag].mean()) if len(members) else 0.0
        rows.append(row)
    return pd.DataFrame(rows, columns=["community", "n", *FEATURE_COLUMNS.values()])


def run_profiles(records: Iterable[RunRecord], graphs: Mapping[str, Graph]) -> pd.DataFrame:
    """Descriptive statistics of every successful run."""
    rows = []
    for record in records:
        if not record.ok:
            continue
        profile = community_profile(graphs[record.network], record.cover)
        rows.append({"algorithm": record.algorithm, "network": record.network, **asdict(profile)})
    return pd.DataFrame(rows, columns=["algorithm", "network", *STAT_COLUMNS])


def stats_table(
    communities: Sequence[Sequence[str]],
    records: Iterable[RunRecord],
    graphs: Mapping[str, Graph],
) -> pd.DataFrame:
    """Average output statistics per ASN community.

    Runs are first averaged per algorithm; community rows are means of the
    algorithm means, with standard errors across algorithms in the
    ``*_sem`` columns.

    Raises:
        ContractError: If a community is empty or none of its algorithms
            has a successful run
    """
    per_algorithm = run_profiles(records, graphs).groupby("algorithm")[STAT_COLUMNS].mean()

    rows: List[Dict[str, object]] = []
    for number, members in enumerate(communities, start=1):
        if not members:
            raise ContractError(f"community {number} is empty")
        present = [a for a in members if a in per_algorithm.index]
        if not present:
            raise ContractError(f"community {number} has no successful runs")
        block = per_algorithm.loc[present]
        row: Dict[str, object] = {"community": number, "algorithms": len(present)}
        for column in STAT_COLUMNS:
            values = block[column].to_numpy(dtype=float)
            row[column] = float(values.mean())
            row[f"{column}_sem"] = float(stats.sem(values)) if len(values) > 1 else np.nan
        rows.append(row)

    columns = ["community", "algorithms"]
    for column in STAT_COLUMNS:
        columns += [column, f"{column}_sem"]
    return pd.DataFrame(rows, columns=columns)
