"""Run configuration: defaults, config-file values, then CLI flags.

Precedence is flags > config file > defaults. Every report starts with a
header line embedding the fully resolved configuration so any output is
reproducible from the header plus its input file.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, fields, replace
from enum import Enum
from pathlib import Path

from .confidence import ConfidenceKind
from .curation import DEFAULT_ALPHA
from .errors import TraceFormatError
from .selection import DEFAULT_EPSILON, DEFAULT_K
from .spikes import SpikeConfig

METRIC_ALIASES = {
    "edis": ConfidenceKind.EDIS,
    "entropy": ConfidenceKind.MEAN_ENTROPY,
    "mean_entropy": ConfidenceKind.MEAN_ENTROPY,
    "sc": ConfidenceKind.SELF_CERTAINTY,
    "self_certainty": ConfidenceKind.SELF_CERTAINTY,
}

DEFAULT_RETENTION = (0.1, 0.2, 0.3, 0.5)


class ZScoreScope(str, Enum):
    """Whether curation z-scores use per-prompt-group or whole-batch moments."""

    GROUP = "group"
    BATCH = "batch"


@dataclass(frozen=True)
class RunConfig:
    """Resolved knobs for one CLI run."""

    window_w: int = 5
    tau_burst: float = 1.36
    tau_rebound: float = 1.33
    tau_diff: float = 0.7
    k: int = DEFAULT_K
    m: int = 1
    metric: ConfidenceKind = ConfidenceKind.EDIS
    epsilon: float = DEFAULT_EPSILON
    alpha: float = DEFAULT_ALPHA
    target_n: int | None = None
    zscore_scope: ZScoreScope = ZScoreScope.GROUP
    retention: tuple[float, ...] = DEFAULT_RETENTION
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "metric", _coerce_metric(self.metric))
        object.__setattr__(self, "zscore_scope", ZScoreScope(self.zscore_scope))
        object.__setattr__(self, "retention", tuple(float(q) for q in self.retention))
        self.spike()  # validates window/thresholds
        if self.k < 1:
            raise ValueError(f"k must be >= 1, got {self.k}")
        if self.m < 1:
            raise ValueError(f"m must be >= 1, got {self.m}")
        if not self.epsilon > 0.0:
            raise ValueError(f"epsilon must be > 0, got {self.epsilon!r}")
        if not self.alpha > 0.0:
            raise ValueError(f"alpha must be > 0, got {self.alpha!r}")
        if self.target_n is not None and self.target_n < 1:
            raise ValueError(f"target_n must be >= 1, got {self.target_n}")
        for q in self.retention:
            if not (math.isfinite(q) and 0.0 < q <= 1.0):
                raise ValueError(f"retention fractions must be in (0, 1], got {q!r}")

    def spike(self) -> SpikeConfig:
        return SpikeConfig(
            window_w=self.window_w,
            tau_burst=self.tau_burst,
            tau_rebound=self.tau_rebound,
            tau_diff=self.tau_diff,
        )

    def to_dict(self) -> dict:
        return {
            "window_w": self.window_w,
            "tau_burst": self.tau_burst,
            "tau_rebound": self.tau_rebound,
            "tau_diff": self.tau_diff,
            "k": self.k,
            "m": self.m,
            "metric": self.metric.value,
            "epsilon": self.epsilon,
            "alpha": self.alpha,
            "target_n": self.target_n,
            "zscore_scope": self.zscore_scope.value,
            "retention": list(self.retention),
            "seed": self.seed,
        }


def _coerce_metric(value: object) -> ConfidenceKind:
    if isinstance(value, ConfidenceKind):
        return value
    if isinstance(value, str) and value in METRIC_ALIASES:
        return METRIC_ALIASES[value]
    raise ValueError(
        f"unknown metric {value!r}; expected one of {sorted(METRIC_ALIASES)}"
    )


def load_config_file(path: str | Path) -> dict:
    """Read a JSON config file holding RunConfig field overrides."""
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"config file {path}: invalid JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise TraceFormatError(f"config file {path}: must hold a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(obj) - known
    if unknown:
        raise TraceFormatError(
            f"config file {path}: unknown keys {sorted(unknown)}"
        )
    return obj


def resolve_config(
    config_path: str | Path | None, overrides: dict
) -> RunConfig:
    """Layer defaults, then the config file, then explicit flag overrides."""
    cfg = RunConfig()
    if config_path is not None:
        file_values = load_config_file(config_path)
        if "retention" in file_values:
            file_values["retention"] = tuple(file_values["retention"])
        cfg = replace(cfg, **file_values)
    cleaned = {k: v for k, v in overrides.items() if v is not None}
    if cleaned:
        cfg = replace(cfg, **cleaned)
    return cfg
