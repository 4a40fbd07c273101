"""Tests for overlapping normalized mutual information."""

import numpy as np
import pytest

from asn_maker.graph.model import Cover
from asn_maker.metrics.onmi import OnmiVariant, nmi_partitions, onmi

VARIANTS = ["MAX", "LFK", "SUM"]


def random_cover(rng, n, communities):
    members = [
        rng.choice(n, size=rng.integers(2, n // 2 + 1), replace=False)
        for _ in range(communities)
    ]
    return Cover.from_communities(members, n)


@pytest.mark.parametrize("variant", VARIANTS)
def test_identical_partitions(variant):
    cover = Cover.from_communities([{0, 1, 2}, {3, 4}, {5, 6, 7}], 8)
    assert onmi(cover, cover, variant) == pytest.approx(1.0)


@pytest.mark.parametrize("variant", VARIANTS)
def test_identical_overlapping_covers(variant):
    cover = Cover.from_communities([{0, 1, 2, 3}, {3, 4, 5}, {5, 6, 7}], 8)
    assert onmi(cover, cover, variant) == pytest.approx(1.0)


@pytest.mark.parametrize("variant", VARIANTS)
def test_independent_partitions(variant):
    x = Cover.from_communities([{0, 1}, {2, 3}], 4)
    y = Cover.from_communities([{0, 2}, {1, 3}], 4)
    assert onmi(x, y, variant) == pytest.approx(0.0, abs=1e-12)


def test_partitions_use_plain_nmi():
    x = Cover.from_communities([{0, 1, 2}, {3, 4, 5}], 6)
    y = Cover.from_communities([{0, 1}, {2, 3}, {4, 5}], 6)
    for variant in VARIANTS:
        assert onmi(x, y, variant) == nmi_partitions(x, y, variant)
    # MAX divides by the larger entropy
    assert onmi(x, y, "MAX") <= onmi(x, y, "SUM")


def test_trivial_covers():
    whole = Cover.from_communities([range(5)], 5)
    assert onmi(whole, whole) == 1.0
    assert onmi(whole, Cover.from_labels(range(5))) == 0.0


@pytest.mark.parametrize("seed", range(5))
def test_range_and_symmetry(seed):
    rng = np.random.default_rng(seed)
    x = random_cover(rng, 20, 4)
    y = random_cover(rng, 20, 5)
    for variant in VARIANTS:
        value = onmi(x, y, variant)
        assert 0.0 <= value <= 1.0
        assert value == pytest.approx(onmi(y, x, variant), abs=1e-12)


def test_size_mismatch_rejected():
    with pytest.raises(ValueError, match="different node counts"):
        onmi(Cover.from_labels([0, 1]), Cover.from_labels([0, 1, 2]))


def test_variant_parsing():
    assert OnmiVariant.parse("lfk") is OnmiVariant.LFK
    assert OnmiVariant.parse(OnmiVariant.SUM) is OnmiVariant.SUM
    with pytest.raises(ValueError):
        OnmiVariant.parse("AVG")


def contingency_nmi(a, b, variant):
    """Partition NMI from a contingency table, in nats."""
    _, ia = np.unique(a, return_inverse=True)
    _, ib = np.unique(b, return_inverse=True)
    table = np.zeros((ia.max() + 1, ib.max() + 1))
    for i, j in zip(ia, ib):
        table[i, j] += 1
    p = table / table.sum()
    pa, pb = p.sum(axis=1), p.sum(axis=0)
    ha = -sum(x * np.log(x) for x in pa if x > 0)
    hb = -sum(x * np.log(x) for x in pb if x > 0)
    mutual = sum(
        p[i, j] * np.log(p[i, j] / (pa[i] * pb[j]))
        for i in range(p.shape[0])
        for j in range(p.shape[1])
        if p[i, j] > 0
    )
    if variant == "MAX":
        return mutual / max(ha, hb)
    if variant == "SUM":
        return 2 * mutual / (ha + hb)
    return 0.5 * (mutual / ha + mutual / hb)


def test_partitions_match_contingency_nmi():
    rng = np.random.default_rng(2024)
    for _ in range(200):
        a = rng.integers(0, rng.integers(2, 8), size=100)
        b = rng.integers(0, rng.integers(2, 8), size=100)
        if len(set(a)) < 2 or len(set(b)) < 2:
            continue
        x, y = Cover.from_labels(a.tolist()), Cover.from_labels(b.tolist())
        for variant in VARIANTS:
            assert onmi(x, y, variant) == pytest.approx(
                contingency_nmi(a, b, variant), abs=1e-9
            )


def test_unrelated_covers_score_near_zero():
    rng = np.random.default_rng(7)
    n = 1000
    values = []
    for _ in range(100):
        covers = []
        for _ in range(2):
            side = rng.random(n) < 0.5
            both = rng.random(n) < 0.1
            first = np.flatnonzero(side | both)
            second = np.flatnonzero(~side | both)
            covers.append(Cover.from_communities([first.tolist(), second.tolist()], n))
        values.append(onmi(covers[0], covers[1], "MAX"))
    assert np.mean(np.abs(values)) < 0.05
