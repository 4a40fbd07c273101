"""Edge-weight distributions."""

from pathlib import Path
from typing import Iterable, List, Tuple, Union

import numpy as np
import pandas as pd


def ccdf(weights: Iterable[float]) -> List[Tuple[float, float]]:
    """P(W >= w) at every distinct weight, in increasing order of w.

    Raises:
        ValueError: If no weights are given
    """
    values = np.sort(np.asarray(list(weights), dtype=float))
    if values.size == 0:
        raise ValueError("ccdf needs at least one weight")
    distinct, first = np.unique(values, return_index=True)
    share = (values.size - first) / values.size
    return [(float(w), float(p)) for w, p in zip(distinct, share)]


def write_ccdf(points: List[Tuple[float, float]], path: Union[str, Path]) -> Path:
    path = Path(path)
    pd.DataFrame(points, columns=["weight", "ccdf"]).to_csv(
        path, index=False, float_format="%.10g"
    )
    return path
