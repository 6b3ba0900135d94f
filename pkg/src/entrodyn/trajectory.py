"""Entropy trajectories and per-response records.

The unit of analysis is the per-step token entropy of a sampled generation,

    H_t = -sum_v p_t(v) ln p_t(v)        (nats)

collected into a trajectory H = (H_1, ..., H_T). Everything downstream (spike
counts, instability scores, confidence baselines) consumes these types.

Mean and variance use left-to-right accumulation on purpose: language ports of
this library reproduce the exact same floating-point results.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from typing import Iterable, Sequence

from .errors import InvalidDistributionError

logger = logging.getLogger(__name__)

# Tolerance for "sums to one" checks on full distributions.
PROB_SUM_TOL = 1e-6
# Truncated top-k lists may overshoot one by at most this much.
TAIL_SUM_TOL = 1e-9


class TailMode(str, Enum):
    """How to treat probability mass missing from a truncated top-k vector."""

    RENORMALIZE = "renormalize"
    SINGLE_BUCKET = "single_bucket"


def entropy_from_distribution(probs: Sequence[float]) -> float:
    """Shannon entropy of a probability vector, in nats.

    The vector must be nonnegative and sum to 1 within ``PROB_SUM_TOL``; it is
    renormalized internally so near-misses do not bias the result. Zero
    entries contribute nothing (0 ln 0 = 0).

    Raises:
        InvalidDistributionError: empty, negative, all-zero, or off-simplex input.
    """
    if len(probs) == 0:
        raise InvalidDistributionError("probability vector is empty")
    total = 0.0
    for p in probs:
        if not math.isfinite(p) or p < 0.0:
            raise InvalidDistributionError(f"probability {p!r} is negative or non-finite")
        total += p
    if total <= 0.0:
        raise InvalidDistributionError("probability vector is all zeros")
    if abs(total - 1.0) > PROB_SUM_TOL:
        raise InvalidDistributionError(f"probabilities sum to {total!r}, not 1")
    acc = 0.0
    for p in probs:
        q = p / total
        if q > 0.0:
            acc += q * math.log(q)
    return -acc


def entropy_from_truncated(
    top_probs: Sequence[float], tail_mode: TailMode | str = TailMode.SINGLE_BUCKET
) -> float:
    """Entropy estimate from a truncated top-k probability list, in nats.

    ``single_bucket`` treats the missing mass 1 - sum(top_probs) as one extra
    outcome (a lower bound that keeps the tail's weight); ``renormalize``
    rescales the known entries to sum to 1 (ignores the tail entirely).

    Raises:
        InvalidDistributionError: empty, negative, or sum > 1 beyond tolerance.
    """
    mode = TailMode(tail_mode)
    if len(top_probs) == 0:
        raise InvalidDistributionError("top_probs is empty")
    total = 0.0
    for p in top_probs:
        if not math.isfinite(p) or p < 0.0:
            raise InvalidDistributionError(f"probability {p!r} is negative or non-finite")
        total += p
    if total > 1.0 + TAIL_SUM_TOL:
        raise InvalidDistributionError(f"top_probs sum to {total!r}, above 1")
    if mode is TailMode.RENORMALIZE:
        if total <= 0.0:
            raise InvalidDistributionError("top_probs are all zeros")
        return entropy_from_distribution([p / total for p in top_probs])
    residual = 1.0 - total
    if residual > 0.0:
        return entropy_from_distribution(list(top_probs) + [residual])
    return entropy_from_distribution(list(top_probs))


@dataclass(frozen=True)
class TokenStep:
    """One generation step: 1-based position, entropy in nats, optional extras."""

    position: int
    entropy: float
    token_text: str | None = None
    top_probs: tuple[float, ...] | None = None

    def __post_init__(self) -> None:
        if self.position < 1:
            raise ValueError(f"position must be >= 1, got {self.position}")
        if not math.isfinite(self.entropy) or self.entropy < 0.0:
            raise ValueError(f"entropy must be finite and >= 0, got {self.entropy!r}")
        if self.top_probs is not None:
            probs = tuple(float(p) for p in self.top_probs)
            object.__setattr__(self, "top_probs", probs)
            if not probs:
                raise InvalidDistributionError("top_probs, when present, must be nonempty")
            total = 0.0
            for p in probs:
                if not math.isfinite(p) or p < 0.0:
                    raise InvalidDistributionError(
                        f"probability {p!r} is negative or non-finite"
                    )
                total += p
            if total > 1.0 + TAIL_SUM_TOL:
                raise InvalidDistributionError(f"top_probs sum to {total!r}, above 1")


@dataclass(frozen=True)
class EntropyTrajectory:
    """A nonempty sequence of token steps with positions 1..T."""

    steps: tuple[TokenStep, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "steps", tuple(self.steps))
        if not self.steps:
            raise ValueError("trajectory must contain at least one step")
        for i, step in enumerate(self.steps, start=1):
            if step.position != i:
                raise ValueError(
                    f"step positions must run 1..T consecutively; "
                    f"index {i} has position {step.position}"
                )

    def __len__(self) -> int:
        return len(self.steps)

    @cached_property
    def entropies(self) -> tuple[float, ...]:
        return tuple(step.entropy for step in self.steps)

    @classmethod
    def from_entropies(
        cls,
        values: Iterable[float],
        texts: Sequence[str] | None = None,
    ) -> "EntropyTrajectory":
        """Build a trajectory from raw entropy values (and optional token texts)."""
        vals = [float(v) for v in values]
        if texts is not None and len(texts) != len(vals):
            raise ValueError(
                f"texts length {len(texts)} does not match entropies length {len(vals)}"
            )
        steps = tuple(
            TokenStep(
                position=i + 1,
                entropy=v,
                token_text=None if texts is None else texts[i],
            )
            for i, v in enumerate(vals)
        )
        return cls(steps)


def mean_entropy(traj: EntropyTrajectory) -> float:
    """Arithmetic mean of the trajectory's entropies."""
    values = traj.entropies
    total = 0.0
    for h in values:
        total += h
    return total / len(values)


def entropy_variance(traj: EntropyTrajectory) -> float:
    """Population variance of the trajectory's entropies (divide by T)."""
    values = traj.entropies
    mu = mean_entropy(traj)
    acc = 0.0
    for h in values:
        d = h - mu
        acc += d * d
    return acc / len(values)


@dataclass(frozen=True)
class ResponseRecord:
    """One sampled response: identity, trajectory, and optional outcome fields."""

    prompt_id: str
    response_id: str
    trajectory: EntropyTrajectory
    answer: str | None = None
    correct: bool | None = None
    reward: float | None = None
    vocab_size: int | None = None

    def __post_init__(self) -> None:
        if not self.prompt_id:
            raise ValueError("prompt_id must be a nonempty string")
        if not self.response_id:
            raise ValueError("response_id must be a nonempty string")
        if self.correct is not None and self.answer is None:
            raise ValueError("a correctness label requires an extracted answer")
        if self.reward is not None and not math.isfinite(self.reward):
            raise ValueError(f"reward must be finite, got {self.reward!r}")
        if self.vocab_size is not None and self.vocab_size < 2:
            raise ValueError(f"vocab_size must be >= 2, got {self.vocab_size}")
