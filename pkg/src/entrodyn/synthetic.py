"""Deterministic synthetic trace generation for tests and demos.

Profiles model the qualitative trajectory shapes of real generations:

  stable   low flat entropy with small single-token "texture" bumps whose
           amplitude sits above tau_diff but below min(tau_burst, tau_rebound),
           so adjacent-step diffs register while burst/rebound counts (and
           hence EDIS) stay exactly 0 when noise is 0
  burst    gradual w-token ramps rising 1.5 * tau_burst, then a slow decay
  rebound  gentle descent into a low valley followed by one sharp jump of
           1.6 * tau_rebound above the valley and a sharp partial fall-back
  mixed    alternating burst and rebound events

Stable records are labeled correct, the rest incorrect. Generation is
deterministic for a fixed seed.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .spikes import DEFAULT_SPIKE_CONFIG, SpikeConfig
from .trajectory import EntropyTrajectory, ResponseRecord, TokenStep


class ProfileKind(str, Enum):
    STABLE = "stable"
    BURST = "burst"
    REBOUND = "rebound"
    MIXED = "mixed"


# Stable-texture bump amplitudes: above tau_diff (0.7), below min tau (1.33).
TEXTURE_AMP_LOW = 0.75
TEXTURE_AMP_HIGH = 0.90
# Event sizes relative to their thresholds.
BURST_RISE_FACTOR = 1.5
REBOUND_JUMP_FACTOR = 1.6
VALLEY_FLOOR = 0.02

_WORD_BANK = (
    "the", "sum", "of", "terms", "equals", "so", "we", "have", "thus",
    "factor", "expand", "yields", "then", "holds", "gives", "and",
)


@dataclass(frozen=True)
class SyntheticProfile:
    """Shape parameters for one synthetic trace population."""

    kind: ProfileKind
    length_range: tuple[int, int] = (60, 120)
    base_entropy: float = 0.3
    noise_scale: float = 0.0
    event_range: tuple[int, int] = (1, 3)
    seed: int = 0
    spike: SpikeConfig = DEFAULT_SPIKE_CONFIG

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", ProfileKind(self.kind))
        lo, hi = self.length_range
        if lo < 8 or hi < lo:
            raise ValueError(f"length_range must satisfy 8 <= lo <= hi, got {self.length_range}")
        if not math.isfinite(self.base_entropy) or self.base_entropy < 0.0:
            raise ValueError(f"base_entropy must be >= 0, got {self.base_entropy!r}")
        if not math.isfinite(self.noise_scale) or self.noise_scale < 0.0:
            raise ValueError(f"noise_scale must be >= 0, got {self.noise_scale!r}")
        elo, ehi = self.event_range
        if elo < 0 or ehi < elo:
            raise ValueError(f"event_range must satisfy 0 <= lo <= hi, got {self.event_range}")
        if self.kind is not ProfileKind.STABLE and ehi > 0:
            footprint = max(_burst_footprint(self.spike), REBOUND_FOOTPRINT)
            if lo < footprint + 2:
                raise ValueError(
                    f"length_range[0]={lo} too short to fit a "
                    f"{self.kind.value} event (needs >= {footprint + 2})"
                )


def _event_positions(
    rng: np.random.Generator, length: int, n_events: int, footprint: int
) -> list[int]:
    """Non-overlapping event start positions, one per equal-width segment."""
    if n_events == 0:
        return []
    usable = length - footprint - 1
    if usable < 1:
        return []
    segment = usable / n_events
    starts = []
    for i in range(n_events):
        lo = 1 + int(i * segment)
        hi = max(lo, 1 + int((i + 1) * segment) - footprint)
        starts.append(int(rng.integers(lo, hi + 1)))
    return starts


def _inject_texture(h: np.ndarray, rng: np.random.Generator, position: int) -> None:
    h[position] += rng.uniform(TEXTURE_AMP_LOW, TEXTURE_AMP_HIGH)


def _inject_burst(h: np.ndarray, position: int, cfg: SpikeConfig) -> None:
    w = cfg.window_w
    rise = BURST_RISE_FACTOR * cfg.tau_burst
    for j in range(1, w + 1):
        if position + j < len(h):
            h[position + j] += rise * j / w
    decay_len = 2 * w
    for j in range(1, decay_len + 1):
        idx = position + w + j
        if idx < len(h):
            h[idx] += rise * max(0.0, 1.0 - j / decay_len)


def _inject_rebound(h: np.ndarray, position: int, cfg: SpikeConfig) -> None:
    base = h[position]
    valley = min(VALLEY_FLOOR, base)
    jump = REBOUND_JUMP_FACTOR * cfg.tau_rebound
    peak = valley + jump
    # The sharp partial fall is 0.6 * jump: large enough to register as a
    # diff spike at default thresholds, small enough that the post-fall level
    # stays within tau_rebound of the valley (no second rebound).
    after_fall = peak - 0.6 * jump
    # Gentle 2-token descent, 2-token valley dwell, sharp peak, sharp partial
    # fall, gentle 2-token recovery.
    shape = [
        base + (valley - base) / 3,
        base + 2 * (valley - base) / 3,
        valley,
        valley,
        peak,
        after_fall,
        base + 2 * (after_fall - base) / 3,
        base + (after_fall - base) / 3,
    ]
    for j, value in enumerate(shape):
        idx = position + j
        if idx < len(h):
            h[idx] = max(0.0, value)


REBOUND_FOOTPRINT = 8


def _burst_footprint(cfg: SpikeConfig) -> int:
    return 3 * cfg.window_w + 1


def _trajectory_values(
    profile: SyntheticProfile, rng: np.random.Generator
) -> np.ndarray:
    lo, hi = profile.length_range
    length = int(rng.integers(lo, hi + 1))
    h = np.full(length, profile.base_entropy, dtype=np.float64)
    n_events = int(rng.integers(profile.event_range[0], profile.event_range[1] + 1))
    cfg = profile.spike
    kind = profile.kind
    if kind is ProfileKind.STABLE:
        for pos in _event_positions(rng, length, n_events, 1):
            _inject_texture(h, rng, pos)
    elif kind is ProfileKind.BURST:
        for pos in _event_positions(rng, length, n_events, _burst_footprint(cfg)):
            _inject_burst(h, pos, cfg)
    elif kind is ProfileKind.REBOUND:
        for pos in _event_positions(rng, length, n_events, REBOUND_FOOTPRINT):
            _inject_rebound(h, pos, cfg)
    else:
        footprint = max(_burst_footprint(cfg), REBOUND_FOOTPRINT)
        for i, pos in enumerate(_event_positions(rng, length, n_events, footprint)):
            if i % 2 == 0:
                _inject_burst(h, pos, cfg)
            else:
                _inject_rebound(h, pos, cfg)
    if profile.noise_scale > 0.0:
        h = h + profile.noise_scale * rng.standard_normal(length)
    return np.maximum(h, 0.0)


def _token_texts(rng: np.random.Generator, length: int) -> list[str]:
    picks = rng.integers(0, len(_WORD_BANK), size=length)
    return [_WORD_BANK[i] for i in picks]


def _build_record(
    profile: SyntheticProfile,
    rng: np.random.Generator,
    prompt_id: str,
    response_id: str,
    answer: str,
    correct: bool,
    with_tokens: bool,
    vocab_size: int | None,
) -> ResponseRecord:
    values = _trajectory_values(profile, rng)
    if with_tokens:
        texts = _token_texts(rng, len(values))
        steps = tuple(
            TokenStep(position=i + 1, entropy=float(v), token_text=texts[i])
            for i, v in enumerate(values)
        )
        trajectory = EntropyTrajectory(steps)
    else:
        trajectory = EntropyTrajectory.from_entropies(float(v) for v in values)
    return ResponseRecord(
        prompt_id=prompt_id,
        response_id=response_id,
        trajectory=trajectory,
        answer=answer,
        correct=correct,
        reward=1.0 if correct else 0.0,
        vocab_size=vocab_size,
    )


def generate_synthetic(
    profile: SyntheticProfile,
    count: int,
    prompt_prefix: str = "prompt",
    with_tokens: bool = False,
    vocab_size: int | None = None,
) -> list[ResponseRecord]:
    """One record per distinct prompt, all drawn from a single profile."""
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    rng = np.random.default_rng(profile.seed)
    correct = profile.kind is ProfileKind.STABLE
    answer = "42" if correct else "13"
    return [
        _build_record(
            profile,
            rng,
            prompt_id=f"{prompt_prefix}-{i:05d}",
            response_id="r000",
            answer=answer,
            correct=correct,
            with_tokens=with_tokens,
            vocab_size=vocab_size,
        )
        for i in range(count)
    ]


def generate_pool_corpus(
    pools: int,
    pool_size: int,
    correct_rate: float,
    seed: int = 0,
    length_range: tuple[int, int] = (60, 120),
    base_entropy: float = 0.3,
    noise_scale: float = 0.0,
    event_range: tuple[int, int] = (1, 3),
    spike: SpikeConfig = DEFAULT_SPIKE_CONFIG,
    with_tokens: bool = False,
    vocab_size: int | None = None,
) -> list[ResponseRecord]:
    """Multi-candidate pools: per prompt, ``pool_size`` responses whose
    correctness is drawn at ``correct_rate``. Correct responses use the stable
    profile and share the prompt's true answer; incorrect ones draw an
    unstable profile kind and a wrong answer. Candidate lists are prefix-nested
    by construction: the first m*k candidates of a pool form the pool for
    multiplier m.
    """
    if pools < 1 or pool_size < 1:
        raise ValueError("pools and pool_size must be >= 1")
    if not 0.0 <= correct_rate <= 1.0:
        raise ValueError(f"correct_rate must be in [0, 1], got {correct_rate!r}")
    rng = np.random.default_rng(seed)
    unstable_kinds = (ProfileKind.BURST, ProfileKind.REBOUND, ProfileKind.MIXED)
    records = []
    for p in range(pools):
        prompt_id = f"p{p:04d}"
        true_answer = f"A{p}"
        for i in range(pool_size):
            correct = bool(rng.random() < correct_rate)
            if correct:
                kind = ProfileKind.STABLE
                answer = true_answer
            else:
                kind = unstable_kinds[int(rng.integers(0, len(unstable_kinds)))]
                answer = f"{'BCD'[int(rng.integers(0, 3))]}{p}"
            profile = SyntheticProfile(
                kind=kind,
                length_range=length_range,
                base_entropy=base_entropy,
                noise_scale=noise_scale,
                event_range=event_range,
                seed=seed,
                spike=spike,
            )
            records.append(
                _build_record(
                    profile,
                    rng,
                    prompt_id=prompt_id,
                    response_id=f"r{i:03d}",
                    answer=answer,
                    correct=correct,
                    with_tokens=with_tokens,
                    vocab_size=vocab_size,
                )
            )
    return records
