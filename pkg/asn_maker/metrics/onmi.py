"""Overlapping normalized mutual information between covers.

Each community is treated as a binary indicator over the nodes. The
conditional entropy of a community given the other cover is the smallest
admissible pairwise conditional entropy, where a pair is admissible only
when it is better explained as a match than as a complement. Three
normalizations are provided:

- LFK: one minus the mean normalized conditional entropy of both sides
- MAX: mutual information over the larger cover entropy
- SUM: mutual information over the mean cover entropy

When both covers are partitions the partition entropies are used instead,
so every variant reduces to ordinary NMI with the matching normalization.
"""

from enum import Enum
from typing import Union

import numpy as np

from asn_maker.graph.model import Cover


class OnmiVariant(str, Enum):
    """Normalization of overlapping NMI."""

    MAX = "MAX"
    LFK = "LFK"
    SUM = "SUM"

    @classmethod
    def parse(cls, value: Union[str, "OnmiVariant"]) -> "OnmiVariant":
        if isinstance(value, cls):
            return value
        try:
            return cls(str(value).upper())
        except ValueError as e:
            raise ValueError(f"unknown oNMI variant {value!r}") from e


def _h(p: np.ndarray) -> np.ndarray:
    """Elementwise -p log2 p with h(0) = 0."""
    p = np.asarray(p, dtype=float)
    out = np.zeros_like(p)
    positive = p > 0
    out[positive] = -p[positive] * np.log2(p[positive])
    return out


def _check_inputs(x: Cover, y: Cover) -> int:
    if x.n != y.n:
        raise ValueError(f"covers span different node counts ({x.n} vs {y.n})")
    if x.n == 0:
        raise ValueError("oNMI is undefined on an empty node set")
    return x.n


def _conditional_entropies(
    x: np.ndarray, y: np.ndarray, n: int
) -> np.ndarray:
    """H*(X_k | Y) for every community k of x.

    Args:
        x: Boolean (K x n) indicators
        y: Boolean (L x n) indicators
    """
    size_x = x.sum(axis=1).astype(float)
    size_y = y.sum(axis=1).astype(float)
    both = x.astype(float) @ y.astype(float).T

    p11 = both / n
    p10 = (size_x[:, None] - both) / n
    p01 = (size_y[None, :] - both) / n
    p00 = 1.0 - p11 - p10 - p01
    p00 = np.clip(p00, 0.0, 1.0)

    h11, h10, h01, h00 = _h(p11), _h(p10), _h(p01), _h(p00)
    py = size_y / n
    h_y = _h(py) + _h(1.0 - py)
    conditional = h11 + h10 + h01 + h00 - h_y[None, :]
    admissible = h11 + h00 >= h01 + h10

    px = size_x / n
    h_x = _h(px) + _h(1.0 - px)
    masked = np.where(admissible, conditional, np.inf)
    best = masked.min(axis=1) if masked.shape[1] else np.full(len(size_x), np.inf)
    return np.where(np.isfinite(best), np.minimum(best, h_x), h_x)


def _community_entropies(indicators: np.ndarray, n: int) -> np.ndarray:
    p = indicators.sum(axis=1) / n
    return _h(p) + _h(1.0 - p)


def _lfk_side(
    cond: np.ndarray, entropy: np.ndarray, own: np.ndarray, other: np.ndarray
) -> float:
    ratios = np.empty(len(entropy))
    other_has_full = bool(np.any(other.all(axis=1)))
    for k, h in enumerate(entropy):
        if h > 0:
            ratios[k] = cond[k] / h
        else:
            # An all-node community is predicted only by its twin
            ratios[k] = 0.0 if other_has_full and own[k].all() else 1.0
    return float(ratios.mean())


def nmi_partitions(x: Cover, y: Cover, variant: Union[str, OnmiVariant] = "MAX") -> float:
    """Plain NMI between two partitions with the variant's normalization."""
    variant = OnmiVariant.parse(variant)
    n = _check_inputs(x, y)
    lx, ly = x.labels_vector(), y.labels_vector()
    contingency = np.zeros((len(x), len(y)))
    np.add.at(contingency, (lx, ly), 1.0)
    joint = contingency / n
    px, py = joint.sum(axis=1), joint.sum(axis=0)
    h_x, h_y = float(_h(px).sum()), float(_h(py).sum())
    nonzero = joint > 0
    mutual = float(
        (joint[nonzero] * np.log2(joint[nonzero] / np.outer(px, py)[nonzero])).sum()
    )
    mutual = max(mutual, 0.0)
    return _normalize(variant, mutual, h_x, h_y, x, y)


def _normalize(
    variant: OnmiVariant, mutual: float, h_x: float, h_y: float, x: Cover, y: Cover
) -> float:
    if h_x <= 0 and h_y <= 0:
        return 1.0 if x.canonical() == y.canonical() else 0.0
    if variant is OnmiVariant.MAX:
        value = mutual / max(h_x, h_y)
    elif variant is OnmiVariant.SUM:
        value = mutual / (0.5 * (h_x + h_y))
    else:
        value = 0.5 * sum(mutual / h for h in (h_x, h_y) if h > 0)
    return float(min(max(value, 0.0), 1.0))


def onmi(x: Cover, y: Cover, variant: Union[str, OnmiVariant] = "MAX") -> float:
    """Overlapping NMI between two covers of the same node set.

    Args:
        x: First cover
        y: Second cover
        variant: MAX, LFK or SUM

    Returns:
        Similarity in [0, 1]; 1 for identical non-degenerate covers

    Raises:
        ValueError: On an empty node set or covers of different sizes
    """
    variant = OnmiVariant.parse(variant)
    n = _check_inputs(x, y)
    if x.is_partition() and y.is_partition():
        return nmi_partitions(x, y, variant)

    ix, iy = x.indicator_matrix(), y.indicator_matrix()
    ent_x, ent_y = _community_entropies(ix, n), _community_entropies(iy, n)
    cond_xy = _conditional_entropies(ix, iy, n)
    cond_yx = _conditional_entropies(iy, ix, n)
    h_x, h_y = float(ent_x.sum()), float(ent_y.sum())

    if h_x <= 0 and h_y <= 0:
        return 1.0 if x.canonical() == y.canonical() else 0.0

    if variant is OnmiVariant.LFK:
        value = 1.0 - 0.5 * (
            _lfk_side(cond_xy, ent_x, ix, iy) + _lfk_side(cond_yx, ent_y, iy, ix)
        )
        return float(min(max(value, 0.0), 1.0))

    mutual = 0.5 * ((h_x - float(cond_xy.sum())) + (h_y - float(cond_yx.sum())))
    return _normalize(variant, mutual, h_x, h_y, x, y)
