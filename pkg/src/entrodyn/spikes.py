"""Spike detection over entropy trajectories and the EDIS instability score.

Three detectors, all using strict inequalities on differences:

  burst    count of window starts t in 1..T-w with H_{t+w} - H_t > tau_burst
  rebound  count of positions t in 2..T with H_t - min_{s<t} H_s > tau_rebound
  diff     count of positions t in 1..T-1 with |H_{t+1} - H_t| > tau_diff

EDIS = S(H) * (1 + Var(H)) where S(H) = (burst + rebound) / 2 and Var is the
population variance of the trajectory. Zero spikes means EDIS is exactly 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

import numpy as np

from .trajectory import EntropyTrajectory, entropy_variance


@dataclass(frozen=True)
class SpikeConfig:
    """Detector parameters: window length and the three thresholds, in nats."""

    window_w: int = 5
    tau_burst: float = 1.36
    tau_rebound: float = 1.33
    tau_diff: float = 0.7

    def __post_init__(self) -> None:
        if self.window_w < 1:
            raise ValueError(f"window_w must be >= 1, got {self.window_w}")
        for name in ("tau_burst", "tau_rebound", "tau_diff"):
            value = getattr(self, name)
            if not value > 0.0:
                raise ValueError(f"{name} must be > 0, got {value!r}")


DEFAULT_SPIKE_CONFIG = SpikeConfig()


class SpikeStatus(str, Enum):
    """Per-token flag combining the two event detectors."""

    NONE = "none"
    BURST_ONLY = "burst_only"
    REBOUND_ONLY = "rebound_only"
    BOTH = "both"


@dataclass(frozen=True)
class SpikeReport:
    """Counts, the combined score, and per-token statuses for one trajectory."""

    burst_count: int
    rebound_count: int
    combined_score: float
    per_token_status: tuple[SpikeStatus, ...]

    def __post_init__(self) -> None:
        if self.burst_count < 0 or self.rebound_count < 0:
            raise ValueError("spike counts must be nonnegative")
        if self.combined_score != (self.burst_count + self.rebound_count) / 2:
            raise ValueError(
                f"combined_score {self.combined_score!r} is not "
                f"(burst + rebound)/2 = {(self.burst_count + self.rebound_count) / 2!r}"
            )


def burst_spike_count(
    traj: EntropyTrajectory, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> int:
    """Number of w-token windows whose cumulative entropy growth exceeds tau_burst."""
    h = np.asarray(traj.entropies, dtype=np.float64)
    w = cfg.window_w
    if len(h) <= w:
        return 0
    return int(np.count_nonzero(h[w:] - h[:-w] > cfg.tau_burst))


def rebound_spike_count(
    traj: EntropyTrajectory, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> int:
    """Number of positions whose entropy exceeds the strict-past minimum by > tau_rebound."""
    h = np.asarray(traj.entropies, dtype=np.float64)
    if len(h) < 2:
        return 0
    past_min = np.minimum.accumulate(h)[:-1]
    return int(np.count_nonzero(h[1:] - past_min > cfg.tau_rebound))


def simple_diff_spike_count(
    traj: EntropyTrajectory, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> int:
    """Number of adjacent-step jumps with |H_{t+1} - H_t| > tau_diff."""
    h = np.asarray(traj.entropies, dtype=np.float64)
    if len(h) < 2:
        return 0
    return int(np.count_nonzero(np.abs(np.diff(h)) > cfg.tau_diff))


def edis(traj: EntropyTrajectory, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG) -> float:
    """Instability score S(H) * (1 + Var(H)); 0 exactly iff no spikes fire."""
    score = (burst_spike_count(traj, cfg) + rebound_spike_count(traj, cfg)) / 2
    return score * (1.0 + entropy_variance(traj))


def spike_status_map(
    traj: EntropyTrajectory, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> tuple[SpikeStatus, ...]:
    """Per-token statuses: burst events flag their window end t+w, rebounds flag t."""
    h = traj.entropies
    size = len(h)
    burst_flagged = [False] * size
    rebound_flagged = [False] * size
    w = cfg.window_w
    # Indices below are 0-based; an event at window start t (1-based) lands on
    # 0-based index t - 1 + w.
    for start in range(size - w):
        if h[start + w] - h[start] > cfg.tau_burst:
            burst_flagged[start + w] = True
    running_min = h[0]
    for idx in range(1, size):
        if h[idx] - running_min > cfg.tau_rebound:
            rebound_flagged[idx] = True
        if h[idx] < running_min:
            running_min = h[idx]
    statuses = []
    for b, r in zip(burst_flagged, rebound_flagged):
        if b and r:
            statuses.append(SpikeStatus.BOTH)
        elif b:
            statuses.append(SpikeStatus.BURST_ONLY)
        elif r:
            statuses.append(SpikeStatus.REBOUND_ONLY)
        else:
            statuses.append(SpikeStatus.NONE)
    return tuple(statuses)


def spike_report(
    traj: EntropyTrajectory, cfg: SpikeConfig = DEFAULT_SPIKE_CONFIG
) -> SpikeReport:
    """Bundle counts, the combined score, and the status map for one trajectory."""
    burst = burst_spike_count(traj, cfg)
    rebound = rebound_spike_count(traj, cfg)
    return SpikeReport(
        burst_count=burst,
        rebound_count=rebound,
        combined_score=(burst + rebound) / 2,
        per_token_status=spike_status_map(traj, cfg),
    )
