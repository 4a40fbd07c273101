"""Discrete truncated power-law sampling."""

from typing import Union

import numpy as np

SeedLike = Union[int, np.random.Generator, None]


def _support(exponent: float, x_min: int, x_max: int):
    if x_min < 1 or x_min > x_max:
        raise ValueError(f"empty support [{x_min}, {x_max}]")
    if exponent < 1:
        raise ValueError(f"exponent must be at least 1, got {exponent}")
    support = np.arange(x_min, x_max + 1)
    weights = support.astype(float) ** (-exponent)
    return support, weights / weights.sum()


def powerlaw_mean(exponent: float, x_min: int, x_max: int) -> float:
    """Expected value of p(x) ~ x^-exponent on the integers [x_min, x_max]."""
    support, p = _support(exponent, x_min, x_max)
    return float((support * p).sum())


def sample_truncated_powerlaw(
    exponent: float, x_min: int, x_max: int, count: int, seed: SeedLike = None
) -> np.ndarray:
    """Draw i.i.d. integers from p(x) ~ x^-exponent on [x_min, x_max].

    Raises:
        ValueError: On an empty support or an exponent below 1
    """
    support, p = _support(exponent, x_min, x_max)
    rng = np.random.default_rng(seed)
    return rng.choice(support, size=count, p=p)


def sample_powerlaw_with_mean(
    exponent: float, mean: float, x_max: int, count: int, seed: SeedLike = None
) -> np.ndarray:
    """Power-law integers on [x_lo, x_max] whose expected value is ``mean``.

    The lower cutoff is solved numerically: the two integer cutoffs whose
    means bracket the target are mixed with the weight that reproduces it.
    """
    rng = np.random.default_rng(seed)
    if mean >= x_max:
        return np.full(count, x_max, dtype=np.int64)
    means = [powerlaw_mean(exponent, x, x_max) for x in range(1, x_max + 1)]
    if mean <= means[0]:
        return sample_truncated_powerlaw(exponent, 1, x_max, count, rng)
    lower = max(x for x in range(1, x_max) if means[x - 1] <= mean)
    low_mean, high_mean = means[lower - 1], means[lower]
    weight_low = (high_mean - mean) / (high_mean - low_mean)
    low = sample_truncated_powerlaw(exponent, lower, x_max, count, rng)
    high = sample_truncated_powerlaw(exponent, lower + 1, x_max, count, rng)
    pick_low = rng.random(count) < weight_low
    return np.where(pick_low, low, high)
