"""RL sample curation from instability scores: filtering and advantage weighting.

Given a group of sampled responses for one prompt, with per-response EDIS,
correctness, and reward:

  grpo_advantage    (r_i - mu) / sigma with population sigma; degenerate -> zeros
  sequence_filter   keep most-stable correct and most-unstable incorrect members
  sequence_weights  z-score log(EDIS+1), sign by correctness, temper through a
                    softmax, renormalize within correctness groups, and scale
                    the GRPO advantages

Weighting applies only to mixed-outcome groups; all-correct or all-incorrect
groups get unit weights. Moments accumulate left to right so language ports
reproduce identical floating-point results.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

from .errors import GroupSizeError

DEFAULT_ALPHA = 1.8
# Below this, a population sigma is treated as zero (degenerate group).
SIGMA_FLOOR = 1e-12


@dataclass(frozen=True)
class GroupMember:
    """One response inside a curation group."""

    response_id: str
    edis: float
    correct: bool
    reward: float

    def __post_init__(self) -> None:
        if not self.response_id:
            raise ValueError("response_id must be a nonempty string")
        if not math.isfinite(self.edis) or self.edis < 0.0:
            raise ValueError(f"edis must be finite and >= 0, got {self.edis!r}")
        if not math.isfinite(self.reward):
            raise ValueError(f"reward must be finite, got {self.reward!r}")


@dataclass(frozen=True)
class GroupBatch:
    """All members sampled for one prompt plus the filter target size."""

    prompt_id: str
    members: tuple[GroupMember, ...]
    target_n: int

    def __post_init__(self) -> None:
        object.__setattr__(self, "members", tuple(self.members))
        if not self.members:
            raise ValueError("group must have at least one member")
        if self.target_n < 1:
            raise ValueError(f"target_n must be >= 1, got {self.target_n}")

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class MemberWeights:
    """Per-member curation pipeline outputs."""

    response_id: str
    z: float
    signed_s: float
    raw_w: float
    norm_w: float
    advantage: float
    weighted_advantage: float


@dataclass(frozen=True)
class CurationWeights:
    """Pipeline outputs for a whole group, in member order."""

    prompt_id: str
    members: tuple[MemberWeights, ...]

    def norm_weights(self) -> list[float]:
        return [m.norm_w for m in self.members]

    def advantages(self) -> list[float]:
        return [m.advantage for m in self.members]

    def weighted_advantages(self) -> list[float]:
        return [m.weighted_advantage for m in self.members]


def _population_stats(values: Sequence[float]) -> tuple[float, float]:
    n = len(values)
    total = 0.0
    for v in values:
        total += v
    mu = total / n
    acc = 0.0
    for v in values:
        d = v - mu
        acc += d * d
    return mu, math.sqrt(acc / n)


def grpo_advantage(rewards: Sequence[float]) -> list[float]:
    """Group-standardized rewards (r - mu)/sigma; all zeros when sigma ~ 0."""
    if len(rewards) == 0:
        raise ValueError("rewards must be nonempty")
    mu, sigma = _population_stats(rewards)
    if sigma < SIGMA_FLOOR:
        return [0.0] * len(rewards)
    return [(r - mu) / sigma for r in rewards]


def log_edis_stats(edis_values: Sequence[float]) -> tuple[float, float]:
    """Mean and population sigma of ln(EDIS+1), for whole-batch z-scoring."""
    if len(edis_values) == 0:
        raise ValueError("edis_values must be nonempty")
    return _population_stats([math.log(e + 1.0) for e in edis_values])


def sequence_filter(batch: GroupBatch) -> list[str]:
    """Keep target_n ids: most-stable correct and most-unstable incorrect.

    Correct members are ordered by ascending EDIS, incorrect by descending
    EDIS (ties by input order), then the two lists are popped alternately
    starting with the correct list; when one empties, the other fills the
    remainder.

    Raises:
        GroupSizeError: target_n exceeds the member count.
    """
    if batch.target_n > len(batch):
        raise GroupSizeError(
            f"target_n={batch.target_n} exceeds group size {len(batch)} "
            f"for prompt {batch.prompt_id}"
        )
    indexed = list(enumerate(batch.members))
    correct = [
        (i, m) for i, m in indexed if m.correct
    ]
    incorrect = [(i, m) for i, m in indexed if not m.correct]
    correct.sort(key=lambda pair: pair[1].edis)
    incorrect.sort(key=lambda pair: -pair[1].edis)
    kept: list[str] = []
    ci = 0
    ii = 0
    take_correct = True
    while len(kept) < batch.target_n:
        if take_correct and ci < len(correct):
            kept.append(correct[ci][1].response_id)
            ci += 1
        elif not take_correct and ii < len(incorrect):
            kept.append(incorrect[ii][1].response_id)
            ii += 1
        elif ci < len(correct):
            kept.append(correct[ci][1].response_id)
            ci += 1
        else:
            kept.append(incorrect[ii][1].response_id)
            ii += 1
        take_correct = not take_correct
    return kept


def sequence_weights(
    batch: GroupBatch,
    alpha: float = DEFAULT_ALPHA,
    stats: tuple[float, float] | None = None,
) -> CurationWeights:
    """Run the weighting pipeline over one group.

    Steps: z-score ln(EDIS+1) with population sigma (pass ``stats`` to reuse
    whole-batch moments instead of this group's); flip sign for correct
    members; softmax(s/alpha) scaled by the member count; renormalize within
    each correctness group to sum to that group's size; multiply the GRPO
    advantages by the normalized weights. All-correct or all-incorrect groups
    short-circuit to unit weights.
    """
    if not alpha > 0.0:
        raise ValueError(f"alpha must be > 0, got {alpha!r}")
    members = batch.members
    n = len(members)
    logs = [math.log(m.edis + 1.0) for m in members]
    if stats is None:
        mu, sigma = _population_stats(logs)
    else:
        mu, sigma = stats
    if sigma < SIGMA_FLOOR:
        zs = [0.0] * n
    else:
        zs = [(x - mu) / sigma for x in logs]
    signed = [-z if m.correct else z for z, m in zip(zs, members)]
    scaled = [s / alpha for s in signed]
    peak = max(scaled)
    exps = [math.exp(s - peak) for s in scaled]
    total = 0.0
    for e in exps:
        total += e
    raw = [e / total * n for e in exps]
    mixed = any(m.correct for m in members) and any(not m.correct for m in members)
    if not mixed:
        norm = [1.0] * n
    else:
        sums = {True: 0.0, False: 0.0}
        sizes = {True: 0, False: 0}
        for w, m in zip(raw, members):
            sums[m.correct] += w
            sizes[m.correct] += 1
        norm = [
            w / sums[m.correct] * sizes[m.correct] for w, m in zip(raw, members)
        ]
    advantages = grpo_advantage([m.reward for m in members])
    return CurationWeights(
        prompt_id=batch.prompt_id,
        members=tuple(
            MemberWeights(
                response_id=m.response_id,
                z=z,
                signed_s=s,
                raw_w=w,
                norm_w=nw,
                advantage=a,
                weighted_advantage=a * nw,
            )
            for m, z, s, w, nw, a in zip(members, zs, signed, raw, norm, advantages)
        ),
    )


def weighted_advantage(
    advantages: Sequence[float], norm_weights: Sequence[float]
) -> list[float]:
    """Elementwise product of advantages and normalized weights.

    Raises:
        ValueError: length mismatch.
    """
    if len(advantages) != len(norm_weights):
        raise ValueError(
            f"length mismatch: {len(advantages)} advantages vs "
            f"{len(norm_weights)} weights"
        )
    return [a * w for a, w in zip(advantages, norm_weights)]
