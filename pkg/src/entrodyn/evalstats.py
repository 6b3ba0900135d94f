"""Statistical evaluation of confidence signals.

Discrimination (ROC-AUC by midrank Mann-Whitney, equal to brute-force pair
counting with ties at 0.5), correlation (Pearson, Spearman on midranks),
retention curves, Cohen's d, and the spike / discrimination ratios used in
summary reports. Undefined statistics raise; nothing here returns NaN.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np
from scipy.stats import rankdata

from .confidence import Direction
from .errors import (
    DegenerateLabelsError,
    UndefinedCorrelationError,
    UndefinedEffectError,
    UndefinedRatioError,
)


@dataclass(frozen=True)
class LabeledScoreSet:
    """Scores with binary correctness labels and a confidence direction."""

    items: tuple[tuple[float, bool], ...]
    direction: Direction

    def __post_init__(self) -> None:
        object.__setattr__(
            self,
            "items",
            tuple((float(s), bool(c)) for s, c in self.items),
        )
        if not self.items:
            raise ValueError("labeled score set must be nonempty")
        for s, _ in self.items:
            if not math.isfinite(s):
                raise ValueError(f"score must be finite, got {s!r}")

    def __len__(self) -> int:
        return len(self.items)

    def confidences(self) -> np.ndarray:
        """Scores oriented so that larger always means more confident."""
        scores = np.array([s for s, _ in self.items], dtype=np.float64)
        if Direction(self.direction) is Direction.LOWER_IS_CONFIDENT:
            return -scores
        return scores

    def labels(self) -> np.ndarray:
        return np.array([c for _, c in self.items], dtype=bool)


@dataclass(frozen=True)
class CheckpointPoint:
    """Mean spike counts by class at one training step."""

    step: int
    mean_spikes_correct: float
    mean_spikes_incorrect: float

    def __post_init__(self) -> None:
        for name in ("mean_spikes_correct", "mean_spikes_incorrect"):
            value = getattr(self, name)
            if not math.isfinite(value) or value < 0.0:
                raise ValueError(f"{name} must be finite and >= 0, got {value!r}")


@dataclass(frozen=True)
class CheckpointSeries:
    """Per-step class means over a training run; steps strictly increasing."""

    points: tuple[CheckpointPoint, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "points", tuple(self.points))
        if not self.points:
            raise ValueError("checkpoint series must be nonempty")
        for prev, cur in zip(self.points, self.points[1:]):
            if cur.step <= prev.step:
                raise ValueError(
                    f"steps must be strictly increasing; {cur.step} follows {prev.step}"
                )


def roc_auc(score_set: LabeledScoreSet) -> float:
    """Probability a random correct item ranks more confident than a random
    incorrect one, ties counting 0.5. Computed with the midrank Mann-Whitney
    formula, which equals brute-force pair counting exactly.

    Raises:
        DegenerateLabelsError: only one class present.
    """
    labels = score_set.labels()
    n_pos = int(labels.sum())
    n_neg = len(labels) - n_pos
    if n_pos == 0 or n_neg == 0:
        raise DegenerateLabelsError(
            "AUC needs at least one correct and one incorrect item"
        )
    ranks = rankdata(score_set.confidences(), method="average")
    rank_sum = float(ranks[labels].sum())
    u = rank_sum - n_pos * (n_pos + 1) / 2
    return u / (n_pos * n_neg)


def _pearson_arrays(xs: np.ndarray, ys: np.ndarray) -> float:
    dx = xs - xs.mean()
    dy = ys - ys.mean()
    sxx = float(dx @ dx)
    syy = float(dy @ dy)
    if sxx <= 0.0 or syy <= 0.0:
        raise UndefinedCorrelationError("correlation undefined: zero variance input")
    r = float(dx @ dy) / math.sqrt(sxx * syy)
    return max(-1.0, min(1.0, r))


def _paired(xs: Sequence[float], ys: Sequence[float]) -> tuple[np.ndarray, np.ndarray]:
    if len(xs) != len(ys):
        raise ValueError(f"length mismatch: {len(xs)} vs {len(ys)}")
    if len(xs) < 2:
        raise ValueError("correlation needs at least 2 pairs")
    return (
        np.asarray(xs, dtype=np.float64),
        np.asarray(ys, dtype=np.float64),
    )


def pearson(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Product-moment correlation in [-1, 1].

    Raises:
        UndefinedCorrelationError: either input has zero variance.
    """
    ax, ay = _paired(xs, ys)
    return _pearson_arrays(ax, ay)


def spearman(xs: Sequence[float], ys: Sequence[float]) -> float:
    """Pearson correlation of midranks (ties get average rank)."""
    ax, ay = _paired(xs, ys)
    return _pearson_arrays(rankdata(ax, method="average"), rankdata(ay, method="average"))


def retention_accuracy(
    score_set: LabeledScoreSet, fractions: Sequence[float]
) -> list[tuple[float, float]]:
    """Accuracy among the ceil(q*n) most confident items, for each fraction q.

    Fractions must lie in (0, 1]. Ties in confidence keep input order.
    """
    for q in fractions:
        if not 0.0 < q <= 1.0:
            raise ValueError(f"retention fraction must be in (0, 1], got {q!r}")
    conf = score_set.confidences()
    labels = score_set.labels()
    n = len(score_set)
    order = sorted(range(n), key=lambda i: -conf[i])
    results = []
    for q in fractions:
        # Slack absorbs binary-float fuzz (0.1 * 200 is slightly above 20).
        kept = min(n, max(1, math.ceil(q * n - 1e-9)))
        correct = sum(1 for i in order[:kept] if labels[i])
        results.append((q, correct / kept))
    return results


def cohens_d(a: Sequence[float], b: Sequence[float]) -> float:
    """(mean(b) - mean(a)) / pooled SD, pooling sample variances with n-1 weights.

    Raises:
        UndefinedEffectError: pooled SD is zero.
    """
    if len(a) < 2 or len(b) < 2:
        raise ValueError("cohens_d needs at least 2 values per group")
    xa = np.asarray(a, dtype=np.float64)
    xb = np.asarray(b, dtype=np.float64)
    na, nb = len(xa), len(xb)
    va = float(xa.var(ddof=1))
    vb = float(xb.var(ddof=1))
    pooled = math.sqrt(((na - 1) * va + (nb - 1) * vb) / (na + nb - 2))
    if pooled <= 0.0:
        raise UndefinedEffectError("effect size undefined: pooled SD is zero")
    return (float(xb.mean()) - float(xa.mean())) / pooled


def spike_ratio(
    correct_counts: Sequence[float], incorrect_counts: Sequence[float]
) -> float:
    """mean(incorrect) / mean(correct) spike counts.

    Raises:
        UndefinedRatioError: the correct-group mean is zero.
    """
    if len(correct_counts) == 0 or len(incorrect_counts) == 0:
        raise ValueError("spike_ratio needs nonempty count lists")
    mean_correct = float(np.mean(np.asarray(correct_counts, dtype=np.float64)))
    mean_incorrect = float(np.mean(np.asarray(incorrect_counts, dtype=np.float64)))
    if mean_correct <= 0.0:
        raise UndefinedRatioError("spike ratio undefined: correct-group mean is 0")
    return mean_incorrect / mean_correct


def discrimination_ratio(score_a: float, score_b: float) -> float:
    """max/min of two positive scores.

    Raises:
        UndefinedRatioError: either input is <= 0.
    """
    if not (score_a > 0.0 and score_b > 0.0):
        raise UndefinedRatioError(
            f"discrimination ratio needs positive inputs, got {score_a!r}, {score_b!r}"
        )
    return max(score_a, score_b) / min(score_a, score_b)


def checkpoint_spike_ratios(series: CheckpointSeries) -> list[tuple[int, float]]:
    """Per-step incorrect/correct mean ratios.

    Raises:
        UndefinedRatioError: any step has a zero correct-group mean.
    """
    ratios = []
    for point in series.points:
        if point.mean_spikes_correct <= 0.0:
            raise UndefinedRatioError(
                f"step {point.step}: correct-group mean is 0, ratio undefined"
            )
        ratios.append((point.step, point.mean_spikes_incorrect / point.mean_spikes_correct))
    return ratios
