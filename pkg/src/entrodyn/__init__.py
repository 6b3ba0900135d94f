"""entrodyn: instability scoring over token-entropy trajectories.

Detect entropy spikes in sampled LLM generations, score trajectories with
EDIS (entropy-dynamics instability score), select and vote over candidate
pools, curate RL training groups, and evaluate confidence signals.
"""

__version__ = "0.1.0"

from .answers import extract_answer, normalize_answer
from .confidence import (
    ConfidenceKind,
    ConfidenceScore,
    Direction,
    self_certainty,
    sequence_entropy,
)
from .curation import (
    CurationWeights,
    GroupBatch,
    GroupMember,
    MemberWeights,
    grpo_advantage,
    log_edis_stats,
    sequence_filter,
    sequence_weights,
    weighted_advantage,
)
from .errors import (
    DegenerateLabelsError,
    EntrodynError,
    GroupSizeError,
    InsufficientDataError,
    InvalidDistributionError,
    MissingAnswerError,
    MissingScoreError,
    MissingTokenTextError,
    TraceFormatError,
    UndefinedCorrelationError,
    UndefinedEffectError,
    UndefinedRatioError,
)
from .evalstats import (
    CheckpointPoint,
    CheckpointSeries,
    LabeledScoreSet,
    checkpoint_spike_ratios,
    cohens_d,
    discrimination_ratio,
    pearson,
    retention_accuracy,
    roc_auc,
    spearman,
    spike_ratio,
)
from .heatmap import entropy_color, export_heatmap, render_heatmap_html
from .selection import (
    CandidatePool,
    ScoredResponse,
    SelectionReport,
    best_k_filter,
    majority_vote,
    pool_metrics,
    score_response,
    weighted_borda_vote,
)
from .spikes import (
    SpikeConfig,
    SpikeReport,
    SpikeStatus,
    burst_spike_count,
    edis,
    rebound_spike_count,
    simple_diff_spike_count,
    spike_report,
    spike_status_map,
)
from .synthetic import (
    ProfileKind,
    SyntheticProfile,
    generate_pool_corpus,
    generate_synthetic,
)
from .traceio import (
    parse_trace,
    read_jsonl,
    record_from_dict,
    record_to_dict,
    write_jsonl,
    write_trace,
)
from .trajectory import (
    EntropyTrajectory,
    ResponseRecord,
    TailMode,
    TokenStep,
    entropy_from_distribution,
    entropy_from_truncated,
    entropy_variance,
    mean_entropy,
)

__all__ = [
    "__version__",
    # trajectory
    "TokenStep", "EntropyTrajectory", "ResponseRecord", "TailMode",
    "entropy_from_distribution", "entropy_from_truncated",
    "mean_entropy", "entropy_variance",
    # spikes
    "SpikeConfig", "SpikeReport", "SpikeStatus",
    "burst_spike_count", "rebound_spike_count", "simple_diff_spike_count",
    "edis", "spike_status_map", "spike_report",
    # confidence
    "ConfidenceKind", "ConfidenceScore", "Direction",
    "sequence_entropy", "self_certainty",
    # selection
    "CandidatePool", "ScoredResponse", "SelectionReport",
    "best_k_filter", "majority_vote", "weighted_borda_vote",
    "pool_metrics", "score_response",
    # curation
    "GroupBatch", "GroupMember", "CurationWeights", "MemberWeights",
    "grpo_advantage", "sequence_filter", "sequence_weights",
    "weighted_advantage", "log_edis_stats",
    # evalstats
    "LabeledScoreSet", "CheckpointPoint", "CheckpointSeries",
    "roc_auc", "pearson", "spearman", "retention_accuracy",
    "cohens_d", "spike_ratio", "discrimination_ratio", "checkpoint_spike_ratios",
    # io / answers / synthetic / heatmap
    "parse_trace", "write_trace", "record_from_dict", "record_to_dict",
    "read_jsonl", "write_jsonl",
    "extract_answer", "normalize_answer",
    "SyntheticProfile", "ProfileKind", "generate_synthetic", "generate_pool_corpus",
    "export_heatmap", "render_heatmap_html", "entropy_color",
    # errors
    "EntrodynError", "InvalidDistributionError", "InsufficientDataError",
    "MissingScoreError", "MissingAnswerError", "GroupSizeError",
    "DegenerateLabelsError", "UndefinedCorrelationError", "UndefinedEffectError",
    "UndefinedRatioError", "TraceFormatError", "MissingTokenTextError",
]
