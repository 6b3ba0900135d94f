"""Confidence scores over responses: EDIS, sequence entropy, self-certainty.

Each score carries its comparison direction so downstream ranking code never
hardcodes "lower is better". Self-certainty is the per-token KL divergence to
the uniform distribution, which for a full-support distribution reduces to
ln|V| - H_t, averaged over tokens.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum

from .errors import InsufficientDataError
from .trajectory import (
    PROB_SUM_TOL,
    EntropyTrajectory,
    ResponseRecord,
    mean_entropy,
)

logger = logging.getLogger(__name__)


class ConfidenceKind(str, Enum):
    EDIS = "edis"
    MEAN_ENTROPY = "mean_entropy"
    SELF_CERTAINTY = "self_certainty"


class Direction(str, Enum):
    LOWER_IS_CONFIDENT = "lower_is_confident"
    HIGHER_IS_CONFIDENT = "higher_is_confident"


DIRECTION_FOR_KIND: dict[ConfidenceKind, Direction] = {
    ConfidenceKind.EDIS: Direction.LOWER_IS_CONFIDENT,
    ConfidenceKind.MEAN_ENTROPY: Direction.LOWER_IS_CONFIDENT,
    ConfidenceKind.SELF_CERTAINTY: Direction.HIGHER_IS_CONFIDENT,
}


@dataclass(frozen=True)
class ConfidenceScore:
    """A metric value plus the direction in which it signals confidence."""

    kind: ConfidenceKind
    value: float
    direction: Direction

    def __post_init__(self) -> None:
        expected = DIRECTION_FOR_KIND[ConfidenceKind(self.kind)]
        if Direction(self.direction) is not expected:
            raise ValueError(
                f"{self.kind} must carry direction {expected.value}, "
                f"got {self.direction}"
            )
        if not math.isfinite(self.value):
            raise ValueError(f"score value must be finite, got {self.value!r}")

    @classmethod
    def of(cls, kind: ConfidenceKind, value: float) -> "ConfidenceScore":
        kind = ConfidenceKind(kind)
        return cls(kind=kind, value=value, direction=DIRECTION_FOR_KIND[kind])


def sequence_entropy(traj: EntropyTrajectory) -> ConfidenceScore:
    """Mean token entropy as a confidence score (lower is confident)."""
    return ConfidenceScore.of(ConfidenceKind.MEAN_ENTROPY, mean_entropy(traj))


def _has_full_support(traj: EntropyTrajectory) -> bool:
    for step in traj.steps:
        if step.top_probs is None:
            return False
        total = 0.0
        for p in step.top_probs:
            total += p
        if abs(total - 1.0) > PROB_SUM_TOL:
            return False
    return True


def self_certainty(resp: ResponseRecord) -> ConfidenceScore:
    """Mean per-token KL divergence to the uniform distribution (higher is confident).

    Needs either vocab_size on the record, or full-support top_probs on every
    token (then each token's support size stands in for |V|). Per-token values
    below 0 (entropy exceeding ln|V|) are clamped to 0 with a warning.

    Raises:
        InsufficientDataError: neither vocab_size nor full distributions present.
    """
    traj = resp.trajectory
    if resp.vocab_size is not None:
        log_v = math.log(resp.vocab_size)
        per_token = [log_v - step.entropy for step in traj.steps]
    elif _has_full_support(traj):
        per_token = [
            math.log(len(step.top_probs)) - step.entropy for step in traj.steps
        ]
        log_v = None
    else:
        raise InsufficientDataError(
            "self-certainty needs vocab_size or full-support top_probs on every token"
        )
    clamped = 0
    values = []
    for v in per_token:
        if v < 0.0:
            clamped += 1
            values.append(0.0)
        else:
            values.append(v)
    if clamped:
        logger.warning(
            "clamped %d negative self-certainty values to 0 (entropy above ln|V|)",
            clamped,
        )
    if resp.vocab_size is not None and clamped == 0:
        # Exact identity ln|V| - mean(H); keeps rankings the bit-for-bit
        # reverse of sequence_entropy for a shared vocab_size.
        value = log_v - mean_entropy(traj)
    else:
        total = 0.0
        for v in values:
            total += v
        value = total / len(values)
    return ConfidenceScore.of(ConfidenceKind.SELF_CERTAINTY, value)
