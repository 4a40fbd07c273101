"""Tests for truncated power-law sampling."""

import numpy as np
import pytest

from asn_maker.benchmark.powerlaw import (
    powerlaw_mean,
    sample_powerlaw_with_mean,
    sample_truncated_powerlaw,
)


def test_samples_stay_in_support():
    draws = sample_truncated_powerlaw(2.0, 3, 9, 500, seed=1)
    assert draws.min() >= 3
    assert draws.max() <= 9


def test_same_seed_same_draws():
    a = sample_truncated_powerlaw(1.0, 5, 25, 50, seed=7)
    b = sample_truncated_powerlaw(1.0, 5, 25, 50, seed=7)
    assert np.array_equal(a, b)


def test_smaller_values_are_more_likely():
    draws = sample_truncated_powerlaw(2.0, 1, 10, 5000, seed=3)
    assert (draws == 1).sum() > (draws == 2).sum() > (draws == 10).sum()


@pytest.mark.parametrize("x_min, x_max, exponent", [(0, 5, 2.0), (6, 5, 2.0), (1, 5, 0.5)])
def test_invalid_support(x_min, x_max, exponent):
    with pytest.raises(ValueError):
        sample_truncated_powerlaw(exponent, x_min, x_max, 10, seed=0)


def test_single_point_support():
    assert powerlaw_mean(2.0, 4, 4) == 4.0


def test_mean_is_matched():
    draws = sample_powerlaw_with_mean(2.0, 6.0, 20, 20000, seed=11)
    assert draws.mean() == pytest.approx(6.0, rel=0.05)
    assert draws.max() <= 20


def test_mean_above_cutoff_saturates():
    assert sample_powerlaw_with_mean(2.0, 30.0, 20, 5, seed=0).tolist() == [20] * 5
