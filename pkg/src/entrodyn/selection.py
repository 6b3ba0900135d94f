"""Candidate pools, best-k-of-N filtering, and answer voting.

The best-of-N pipeline: sample N = m*k candidates per prompt, keep the k most
confident by some metric, then aggregate. Two voters are provided: plain
majority, and a score-weighted plurality ("weighted Borda") where each
candidate's vote counts (s + epsilon)^-1 for lower-is-confident metrics and
max(s, 0) for higher-is-confident ones. All tie-breaks are deterministic by
input order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from typing import Mapping

from .confidence import (
    ConfidenceKind,
    ConfidenceScore,
    Direction,
    self_certainty,
    sequence_entropy,
)
from .errors import (
    GroupSizeError,
    InsufficientDataError,
    MissingAnswerError,
    MissingScoreError,
)
from .spikes import DEFAULT_SPIKE_CONFIG, SpikeConfig, edis
from .trajectory import ResponseRecord

logger = logging.getLogger(__name__)

DEFAULT_EPSILON = 0.1
DEFAULT_K = 8
M_SWEEP = (1, 2, 4, 8, 16)


@dataclass(frozen=True, eq=False)
class ScoredResponse:
    """A response plus the confidence scores computed for it."""

    response: ResponseRecord
    scores: Mapping[ConfidenceKind, ConfidenceScore]

    def __post_init__(self) -> None:
        normalized = {
            ConfidenceKind(kind): score for kind, score in self.scores.items()
        }
        for kind, score in normalized.items():
            if ConfidenceKind(score.kind) is not kind:
                raise ValueError(
                    f"score registered under {kind.value} has kind {score.kind}"
                )
        object.__setattr__(self, "scores", normalized)

    def score_for(self, metric: ConfidenceKind) -> ConfidenceScore:
        metric = ConfidenceKind(metric)
        try:
            return self.scores[metric]
        except KeyError:
            raise MissingScoreError(
                f"response {self.response.response_id} has no {metric.value} score"
            ) from None


@dataclass(frozen=True)
class CandidatePool:
    """All scored candidates for one prompt, in generation order."""

    prompt_id: str
    candidates: tuple[ScoredResponse, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "candidates", tuple(self.candidates))
        if not self.candidates:
            raise ValueError("candidate pool must be nonempty")
        for cand in self.candidates:
            if cand.response.prompt_id != self.prompt_id:
                raise ValueError(
                    f"candidate {cand.response.response_id} belongs to prompt "
                    f"{cand.response.prompt_id}, not {self.prompt_id}"
                )

    def __len__(self) -> int:
        return len(self.candidates)


@dataclass(frozen=True)
class SelectionReport:
    """Filter/vote outcome for one pool; accuracies absent without labels."""

    kept_ids: tuple[str, ...]
    avg_accuracy: float | None = None
    best_scored_accuracy: int | None = None
    majority_accuracy: int | None = None
    winning_answer: str | None = None


def _confidence_sort_key(score: ConfidenceScore) -> float:
    # Ascending sort puts the most confident candidate first.
    if Direction(score.direction) is Direction.LOWER_IS_CONFIDENT:
        return score.value
    return -score.value


def best_k_filter(
    pool: CandidatePool, k: int, metric: ConfidenceKind
) -> CandidatePool:
    """Keep the k most confident candidates; stable tie-break by input order.

    Raises:
        GroupSizeError: k < 1 or k > pool size.
        MissingScoreError: a candidate lacks the requested metric.
    """
    if k < 1 or k > len(pool):
        raise GroupSizeError(
            f"k={k} outside valid range 1..{len(pool)} for prompt {pool.prompt_id}"
        )
    keys = [_confidence_sort_key(c.score_for(metric)) for c in pool.candidates]
    order = sorted(range(len(keys)), key=keys.__getitem__)
    kept = tuple(pool.candidates[i] for i in order[:k])
    return CandidatePool(prompt_id=pool.prompt_id, candidates=kept)


def _answers_in_first_seen_order(pool: CandidatePool) -> dict[str, int]:
    counts: dict[str, int] = {}
    for cand in pool.candidates:
        answer = cand.response.answer
        if answer is None:
            raise MissingAnswerError(
                f"candidate {cand.response.response_id} has no answer; "
                "drop no-answer responses before voting"
            )
        counts[answer] = counts.get(answer, 0) + 1
    return counts


def majority_vote(pool: CandidatePool) -> str:
    """Most frequent answer; ties go to the answer whose first supporter came first."""
    counts = _answers_in_first_seen_order(pool)
    return max(counts, key=counts.__getitem__)


def weighted_borda_vote(
    pool: CandidatePool,
    metric: ConfidenceKind,
    epsilon: float = DEFAULT_EPSILON,
) -> str:
    """Score-weighted plurality; weight rule follows the metric's direction.

    Lower-is-confident metrics weight each vote by (s + epsilon)^-1; higher-is-
    confident ones use the score itself, clamped at 0 (with a warning).
    """
    if not epsilon > 0.0:
        raise ValueError(f"epsilon must be > 0, got {epsilon!r}")
    totals: dict[str, float] = {}
    clamped = 0
    for cand in pool.candidates:
        answer = cand.response.answer
        if answer is None:
            raise MissingAnswerError(
                f"candidate {cand.response.response_id} has no answer; "
                "drop no-answer responses before voting"
            )
        score = cand.score_for(metric)
        if Direction(score.direction) is Direction.LOWER_IS_CONFIDENT:
            weight = 1.0 / (score.value + epsilon)
        else:
            weight = score.value
            if weight < 0.0:
                clamped += 1
                weight = 0.0
        totals[answer] = totals.get(answer, 0.0) + weight
    if clamped:
        logger.warning("clamped %d negative vote weights to 0", clamped)
    return max(totals, key=totals.__getitem__)


def pool_metrics(pool: CandidatePool, metric: ConfidenceKind) -> SelectionReport:
    """Average, best-scored, and majority accuracies for a fully labeled pool.

    Raises:
        InsufficientDataError: any candidate lacks a correctness label.
    """
    for cand in pool.candidates:
        if cand.response.correct is None:
            raise InsufficientDataError(
                f"candidate {cand.response.response_id} has no correctness label"
            )
    n_correct = sum(1 for c in pool.candidates if c.response.correct)
    best = best_k_filter(pool, 1, metric).candidates[0]
    winner = majority_vote(pool)
    majority_correct = any(
        c.response.answer == winner and c.response.correct for c in pool.candidates
    )
    return SelectionReport(
        kept_ids=tuple(c.response.response_id for c in pool.candidates),
        avg_accuracy=n_correct / len(pool),
        best_scored_accuracy=int(bool(best.response.correct)),
        majority_accuracy=int(majority_correct),
        winning_answer=winner,
    )


def score_response(
    resp: ResponseRecord, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> ScoredResponse:
    """Attach EDIS, mean entropy, and (when computable) self-certainty scores."""
    scores: dict[ConfidenceKind, ConfidenceScore] = {
        ConfidenceKind.EDIS: ConfidenceScore.of(
            ConfidenceKind.EDIS, edis(resp.trajectory, cfg)
        ),
        ConfidenceKind.MEAN_ENTROPY: sequence_entropy(resp.trajectory),
    }
    try:
        scores[ConfidenceKind.SELF_CERTAINTY] = self_certainty(resp)
    except InsufficientDataError:
        pass
    return ScoredResponse(response=resp, scores=scores)
