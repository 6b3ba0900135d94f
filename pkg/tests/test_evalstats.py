"""Discrimination, correlation, retention, and effect-size statistics."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from entrodyn import (
    CheckpointPoint,
    CheckpointSeries,
    DegenerateLabelsError,
    Direction,
    LabeledScoreSet,
    UndefinedCorrelationError,
    UndefinedEffectError,
    UndefinedRatioError,
    checkpoint_spike_ratios,
    cohens_d,
    discrimination_ratio,
    pearson,
    retention_accuracy,
    roc_auc,
    spearman,
    spike_ratio,
)
from oracles import oracle_auc, oracle_pearson, oracle_ranks, oracle_retention

LOWER = Direction.LOWER_IS_CONFIDENT
HIGHER = Direction.HIGHER_IS_CONFIDENT


def score_set(pairs, direction=LOWER):
    return LabeledScoreSet(items=tuple(pairs), direction=direction)


def random_set(rng, n=None, max_n=200):
    if n is None:
        n = int(rng.integers(2, max_n + 1))
    labels = rng.random(n) < rng.uniform(0.2, 0.8)
    if labels.all() or not labels.any():
        labels[0] = not labels[0]
    # Quantized scores force tied pairs through the midrank path.
    scores = np.round(rng.random(n) * 10, 1)
    return score_set(zip(scores.tolist(), labels.tolist()))


class TestLabeledScoreSet:
    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            score_set([])

    def test_nonfinite_rejected(self):
        with pytest.raises(ValueError):
            score_set([(math.nan, True)])

    def test_confidence_orientation(self):
        pairs = [(1.0, True), (4.0, False)]
        low = score_set(pairs, LOWER).confidences()
        high = score_set(pairs, HIGHER).confidences()
        assert low.tolist() == [-1.0, -4.0]
        assert high.tolist() == [1.0, 4.0]


class TestRocAuc:
    def test_perfect_separation(self):
        s = score_set([(0.1, True), (0.2, True), (3.0, False), (4.0, False)])
        assert roc_auc(s) == 1.0

    def test_all_ties(self):
        s = score_set([(2.0, True), (2.0, False), (2.0, True), (2.0, False)])
        assert roc_auc(s) == 0.5

    def test_three_quarters(self):
        s = score_set([(1.0, True), (3.0, True), (2.0, False), (4.0, False)])
        assert roc_auc(s) == 0.75

    def test_single_class_rejected(self):
        with pytest.raises(DegenerateLabelsError):
            roc_auc(score_set([(1.0, True), (2.0, True)]))

    def test_matches_pair_counting_exactly(self):
        rng = np.random.default_rng(42)
        for _ in range(200):
            s = random_set(rng)
            scores = [v for v, _ in s.items]
            labels = [c for _, c in s.items]
            expected = oracle_auc(scores, labels, lower_is_confident=True)
            assert roc_auc(s) == expected

    def test_direction_flip(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            s = random_set(rng, max_n=60)
            flipped = score_set(s.items, HIGHER)
            assert roc_auc(flipped) == pytest.approx(1.0 - roc_auc(s), abs=1e-12)


class TestPearson:
    def test_perfect_linearity(self):
        assert pearson([1.0, 2.0, 3.0], [2.0, 4.0, 6.0]) == 1.0

    def test_perfect_anticorrelation(self):
        assert pearson([1.0, 2.0, 3.0], [-1.0, -2.0, -3.0]) == -1.0

    def test_half(self):
        assert pearson([1.0, 2.0, 3.0], [1.0, 3.0, 2.0]) == pytest.approx(0.5, abs=1e-12)

    def test_zero_variance_rejected(self):
        with pytest.raises(UndefinedCorrelationError):
            pearson([1.0, 1.0, 1.0], [1.0, 2.0, 3.0])

    def test_length_mismatch(self):
        with pytest.raises(ValueError):
            pearson([1.0], [1.0, 2.0])

    def test_too_short(self):
        with pytest.raises(ValueError):
            pearson([1.0], [2.0])

    def test_matches_oracle(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = int(rng.integers(3, 40))
            xs = rng.random(n).tolist()
            ys = rng.random(n).tolist()
            assert pearson(xs, ys) == pytest.approx(oracle_pearson(xs, ys), abs=1e-12)

    def test_bounded(self):
        rng = np.random.default_rng(3)
        for _ in range(100):
            n = int(rng.integers(2, 20))
            xs = rng.random(n).tolist()
            ys = (np.asarray(xs) * 1e8 + rng.random(n) * 1e-8).tolist()
            assert -1.0 <= pearson(xs, ys) <= 1.0


class TestSpearman:
    def test_monotone_transform(self):
        xs = [0.3, 1.2, 4.5, 9.9]
        assert spearman(xs, [math.exp(x) for x in xs]) == 1.0

    def test_reversed(self):
        assert spearman([1.0, 2.0, 3.0], [3.0, 2.0, 1.0]) == -1.0

    def test_fixture(self):
        value = spearman([1.0, 2.0, 3.0, 4.0], [1.0, 3.0, 2.0, 4.0])
        assert value == pytest.approx(0.8, abs=1e-12)

    def test_is_pearson_on_midranks(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            n = int(rng.integers(3, 40))
            xs = np.round(rng.random(n) * 5, 1).tolist()
            ys = np.round(rng.random(n) * 5, 1).tolist()
            expected = oracle_pearson(oracle_ranks(xs), oracle_ranks(ys))
            assert spearman(xs, ys) == pytest.approx(expected, abs=1e-12)

    @given(
        st.lists(
            st.floats(min_value=-50, max_value=50),
            min_size=3,
            max_size=20,
            unique=True,
        ),
        st.lists(st.floats(min_value=-50, max_value=50), min_size=20, max_size=20),
    )
    @settings(max_examples=50, deadline=None)
    def test_increasing_transform_invariance(self, xs, ys):
        ys = ys[: len(xs)]
        if len(set(ys)) < 2:
            return
        base = spearman(xs, ys)
        transformed = spearman([3.0 * x + math.atan(x) for x in xs], ys)
        assert transformed == pytest.approx(base, abs=1e-9)


class TestRetentionAccuracy:
    def test_full_fraction_is_overall_accuracy(self):
        s = score_set([(1.0, True), (2.0, False), (3.0, True), (4.0, False)])
        assert retention_accuracy(s, [1.0]) == [(1.0, 0.5)]

    def test_perfect_separation_keeps_correct(self):
        s = score_set([(0.1, True), (0.2, True), (5.0, False), (6.0, False)])
        assert retention_accuracy(s, [0.5]) == [(0.5, 1.0)]

    def test_half_fixture(self):
        s = score_set([(1.0, True), (2.0, False), (3.0, True), (4.0, False)])
        assert retention_accuracy(s, [0.5]) == [(0.5, 0.5)]

    def test_invalid_fraction(self):
        s = score_set([(1.0, True)])
        for q in (0.0, -0.1, 1.1):
            with pytest.raises(ValueError):
                retention_accuracy(s, [q])

    def test_small_fraction_keeps_at_least_one(self):
        s = score_set([(1.0, True), (2.0, False)])
        assert retention_accuracy(s, [0.01]) == [(0.01, 1.0)]

    def test_matches_oracle(self):
        rng = np.random.default_rng(42)
        fractions = [0.1, 0.2, 0.3, 0.5, 1.0]
        for _ in range(100):
            s = random_set(rng, max_n=80)
            scores = [v for v, _ in s.items]
            labels = [c for _, c in s.items]
            expected = [
                (q, oracle_retention(scores, labels, True, q)) for q in fractions
            ]
            assert retention_accuracy(s, fractions) == pytest.approx(expected)

    def test_tenth_of_200_keeps_20(self):
        # 0.1 * 200 is 20.000000000000004 in binary floats; ceil must not bump to 21.
        pairs = [(float(i), i < 20) for i in range(200)]
        s = score_set(pairs)
        assert retention_accuracy(s, [0.1]) == [(0.1, 1.0)]


class TestCohensD:
    def test_identical_groups(self):
        assert cohens_d([1.0, 2.0, 3.0], [1.0, 2.0, 3.0]) == 0.0

    def test_zero_pooled_sd_rejected(self):
        with pytest.raises(UndefinedEffectError):
            cohens_d([0.0, 0.0], [2.0, 2.0])

    def test_fixture(self):
        assert cohens_d([0.0, 2.0], [2.0, 4.0]) == pytest.approx(1.414214, abs=1e-6)

    def test_too_short(self):
        with pytest.raises(ValueError):
            cohens_d([1.0], [1.0, 2.0])

    def test_antisymmetry(self):
        rng = np.random.default_rng(42)
        for _ in range(100):
            a = rng.random(int(rng.integers(2, 20))).tolist()
            b = (rng.random(int(rng.integers(2, 20))) + 0.5).tolist()
            assert cohens_d(a, b) == pytest.approx(-cohens_d(b, a), abs=1e-12)


class TestSpikeRatio:
    def test_equal_means(self):
        assert spike_ratio([3.0, 5.0], [4.0, 4.0]) == 1.0

    def test_paper_means(self):
        assert spike_ratio([49.3], [82.0]) == pytest.approx(1.663, abs=1e-3)

    def test_doubling(self):
        assert spike_ratio([1.0, 3.0], [4.0, 4.0]) == 2.0

    def test_zero_correct_mean_rejected(self):
        with pytest.raises(UndefinedRatioError):
            spike_ratio([0.0, 0.0], [1.0])

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            spike_ratio([], [1.0])


class TestDiscriminationRatio:
    def test_reported_edis_pair(self):
        assert discrimination_ratio(110.8, 7.9) == pytest.approx(14.025, abs=1e-3)

    def test_reported_entropy_pair(self):
        assert discrimination_ratio(0.57, 0.16) == pytest.approx(3.5625, abs=1e-9)

    def test_equal_inputs(self):
        assert discrimination_ratio(2.0, 2.0) == 1.0

    def test_order_invariance(self):
        assert discrimination_ratio(7.9, 110.8) == discrimination_ratio(110.8, 7.9)

    def test_nonpositive_rejected(self):
        for a, b in ((0.0, 1.0), (1.0, 0.0), (-1.0, 2.0)):
            with pytest.raises(UndefinedRatioError):
                discrimination_ratio(a, b)


class TestCheckpointSeries:
    def test_ratios(self):
        series = CheckpointSeries(
            points=(
                CheckpointPoint(step=100, mean_spikes_correct=2.0, mean_spikes_incorrect=3.8),
                CheckpointPoint(step=200, mean_spikes_correct=1.0, mean_spikes_incorrect=2.69),
            )
        )
        assert checkpoint_spike_ratios(series) == [(100, 1.9), (200, 2.69)]

    def test_steps_strictly_increasing(self):
        with pytest.raises(ValueError):
            CheckpointSeries(
                points=(
                    CheckpointPoint(step=5, mean_spikes_correct=1.0, mean_spikes_incorrect=1.0),
                    CheckpointPoint(step=5, mean_spikes_correct=1.0, mean_spikes_incorrect=1.0),
                )
            )

    def test_negative_mean_rejected(self):
        with pytest.raises(ValueError):
            CheckpointPoint(step=1, mean_spikes_correct=-0.1, mean_spikes_incorrect=1.0)

    def test_empty_rejected(self):
        with pytest.raises(ValueError):
            CheckpointSeries(points=())

    def test_zero_correct_mean_rejected(self):
        series = CheckpointSeries(
            points=(CheckpointPoint(step=1, mean_spikes_correct=0.0, mean_spikes_incorrect=1.0),)
        )
        with pytest.raises(UndefinedRatioError):
            checkpoint_spike_ratios(series)
