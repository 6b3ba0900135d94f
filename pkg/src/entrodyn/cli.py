"""Command-line surface: score, select, vote, curate, eval, heatmap, gen.

All commands read/write UTF-8 JSONL. Every output starts with a header line
({"kind": "header", ...}) embedding the fully resolved run configuration, so
a report is reproducible from its own header plus the input file. Data rows
carry no "kind" key; meta rows (header, aggregate) do. Outputs contain no
timestamps: identical inputs and seeds produce byte-identical files.

Exit codes: 0 success; 2 usage or bad parameter; 3 missing input file;
4 malformed input data; 5 insufficient or degenerate data.
"""

from __future__ import annotations

import argparse
import json
import logging
import re
import sys
from contextlib import contextmanager
from pathlib import Path
from typing import Iterable, Sequence

from . import __version__
from .answers import extract_answer
from .config import METRIC_ALIASES, RunConfig, ZScoreScope, resolve_config
from .confidence import ConfidenceKind, Direction
from .curation import (
    GroupBatch,
    GroupMember,
    log_edis_stats,
    sequence_filter,
    sequence_weights,
)
from .errors import (
    DegenerateLabelsError,
    EntrodynError,
    GroupSizeError,
    InsufficientDataError,
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
    cohens_d,
    pearson,
    retention_accuracy,
    roc_auc,
    spearman,
    spike_ratio,
)
from .heatmap import export_heatmap
from .selection import (
    CandidatePool,
    best_k_filter,
    majority_vote,
    pool_metrics,
    score_response,
    weighted_borda_vote,
)
from .spikes import (
    burst_spike_count,
    edis,
    rebound_spike_count,
    simple_diff_spike_count,
)
from .synthetic import (
    ProfileKind,
    SyntheticProfile,
    generate_pool_corpus,
    generate_synthetic,
)
from .traceio import parse_trace, read_jsonl, record_to_dict
from .trajectory import ResponseRecord, entropy_variance, mean_entropy

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_MISSING_INPUT = 3
EXIT_BAD_DATA = 4
EXIT_INSUFFICIENT = 5

_DATA_ERRORS = (
    InsufficientDataError,
    DegenerateLabelsError,
    GroupSizeError,
    MissingAnswerError,
    MissingScoreError,
    MissingTokenTextError,
    UndefinedCorrelationError,
    UndefinedEffectError,
    UndefinedRatioError,
)


@contextmanager
def _open_out(path: str | None):
    if path is None:
        yield sys.stdout
    else:
        with open(path, "w", encoding="utf-8") as handle:
            yield handle


def _emit(handle, obj: dict) -> None:
    handle.write(json.dumps(obj, ensure_ascii=False) + "\n")


def _header(command: str, cfg: RunConfig, extra: dict | None = None) -> dict:
    header = {
        "kind": "header",
        "tool": "entrodyn",
        "version": __version__,
        "command": command,
        "config": cfg.to_dict(),
    }
    if extra:
        header.update(extra)
    return header


def _group_by_prompt(records: Sequence[ResponseRecord]) -> dict[str, list[ResponseRecord]]:
    groups: dict[str, list[ResponseRecord]] = {}
    for record in records:
        groups.setdefault(record.prompt_id, []).append(record)
    return groups


def _self_certainty_value(scored) -> float | None:
    score = scored.scores.get(ConfidenceKind.SELF_CERTAINTY)
    return None if score is None else score.value


# ---------------------------------------------------------------- score


def _score_row(record: ResponseRecord, cfg: RunConfig) -> dict:
    spike_cfg = cfg.spike()
    traj = record.trajectory
    scored = score_response(record, spike_cfg)
    return {
        "prompt_id": record.prompt_id,
        "response_id": record.response_id,
        "length": len(traj),
        "edis": edis(traj, spike_cfg),
        "burst_count": burst_spike_count(traj, spike_cfg),
        "rebound_count": rebound_spike_count(traj, spike_cfg),
        "diff_count": simple_diff_spike_count(traj, spike_cfg),
        "mean_entropy": mean_entropy(traj),
        "entropy_variance": entropy_variance(traj),
        "self_certainty": _self_certainty_value(scored),
        "answer": record.answer,
        "correct": record.correct,
        "reward": record.reward,
    }


def _cmd_score(args: argparse.Namespace, cfg: RunConfig) -> int:
    records = parse_trace(args.in_path, lenient=args.lenient)
    with _open_out(args.out) as out:
        _emit(out, _header("score", cfg))
        for record in records:
            _emit(out, _score_row(record, cfg))
    return EXIT_OK


# ---------------------------------------------------------------- select


def _scored_pool(
    prompt_id: str, records: Sequence[ResponseRecord], cfg: RunConfig
) -> CandidatePool:
    spike_cfg = cfg.spike()
    return CandidatePool(
        prompt_id=prompt_id,
        candidates=tuple(score_response(r, spike_cfg) for r in records),
    )


def _cmd_select(args: argparse.Namespace, cfg: RunConfig) -> int:
    records = parse_trace(args.in_path, lenient=args.lenient)
    groups = _group_by_prompt(records)
    need = cfg.m * cfg.k
    rows = []
    labeled_reports = []
    for prompt_id, members in groups.items():
        if len(members) < need:
            message = (
                f"prompt {prompt_id}: {len(members)} candidates < m*k = {need}"
            )
            if args.lenient:
                logger.warning("%s (skipped)", message)
                continue
            raise GroupSizeError(message)
        pool = _scored_pool(prompt_id, members[:need], cfg)
        kept = best_k_filter(pool, cfg.k, cfg.metric)
        row = {
            "prompt_id": prompt_id,
            "pool_size": len(pool),
            "kept_ids": [c.response.response_id for c in kept.candidates],
        }
        if all(c.response.correct is not None for c in kept.candidates):
            report = pool_metrics(kept, cfg.metric)
            row.update(
                avg_accuracy=report.avg_accuracy,
                best_scored_accuracy=report.best_scored_accuracy,
                majority_accuracy=report.majority_accuracy,
                winning_answer=report.winning_answer,
            )
            labeled_reports.append(report)
        else:
            row.update(
                avg_accuracy=None,
                best_scored_accuracy=None,
                majority_accuracy=None,
                winning_answer=None,
            )
        rows.append(row)
    aggregate = {
        "kind": "aggregate",
        "prompts": len(rows),
        "labeled_prompts": len(labeled_reports),
        "avg_accuracy": None,
        "best_scored_accuracy": None,
        "majority_accuracy": None,
    }
    if labeled_reports:
        n = len(labeled_reports)
        aggregate["avg_accuracy"] = sum(r.avg_accuracy for r in labeled_reports) / n
        aggregate["best_scored_accuracy"] = (
            sum(r.best_scored_accuracy for r in labeled_reports) / n
        )
        aggregate["majority_accuracy"] = (
            sum(r.majority_accuracy for r in labeled_reports) / n
        )
    with _open_out(args.out) as out:
        _emit(out, _header("select", cfg))
        for row in rows:
            _emit(out, row)
        _emit(out, aggregate)
    return EXIT_OK


# ---------------------------------------------------------------- vote


def _cmd_vote(args: argparse.Namespace, cfg: RunConfig) -> int:
    records = parse_trace(args.in_path, lenient=args.lenient)
    groups = _group_by_prompt(records)
    rows = []
    majority_hits: list[int] = []
    borda_hits: list[int] = []
    for prompt_id, members in groups.items():
        with_answers = [r for r in members if r.answer is not None]
        dropped = len(members) - len(with_answers)
        if dropped:
            logger.warning(
                "prompt %s: dropped %d no-answer candidates before voting",
                prompt_id,
                dropped,
            )
        if not with_answers:
            logger.warning("prompt %s: no candidates with answers, skipped", prompt_id)
            continue
        pool = _scored_pool(prompt_id, with_answers, cfg)
        majority = majority_vote(pool)
        borda = weighted_borda_vote(pool, cfg.metric, cfg.epsilon)
        row = {
            "prompt_id": prompt_id,
            "n_candidates": len(with_answers),
            "n_dropped_no_answer": dropped,
            "majority_answer": majority,
            "borda_answer": borda,
            "majority_correct": None,
            "borda_correct": None,
        }
        if all(r.correct is not None for r in with_answers):
            majority_correct = int(
                any(r.answer == majority and r.correct for r in with_answers)
            )
            borda_correct = int(
                any(r.answer == borda and r.correct for r in with_answers)
            )
            row["majority_correct"] = majority_correct
            row["borda_correct"] = borda_correct
            majority_hits.append(majority_correct)
            borda_hits.append(borda_correct)
        rows.append(row)
    aggregate = {
        "kind": "aggregate",
        "prompts": len(rows),
        "labeled_prompts": len(majority_hits),
        "majority_accuracy": (
            sum(majority_hits) / len(majority_hits) if majority_hits else None
        ),
        "borda_accuracy": sum(borda_hits) / len(borda_hits) if borda_hits else None,
    }
    with _open_out(args.out) as out:
        _emit(out, _header("vote", cfg))
        for row in rows:
            _emit(out, row)
        _emit(out, aggregate)
    return EXIT_OK


# ---------------------------------------------------------------- curate


def _curation_batches(
    records: Sequence[ResponseRecord], cfg: RunConfig, lenient: bool
) -> list[GroupBatch]:
    spike_cfg = cfg.spike()
    batches = []
    for prompt_id, members in _group_by_prompt(records).items():
        group = []
        usable = True
        for record in members:
            if record.correct is None:
                message = (
                    f"prompt {prompt_id}: response {record.response_id} has no "
                    "correctness label; curation needs labeled groups"
                )
                if lenient:
                    logger.warning("%s (group skipped)", message)
                    usable = False
                    break
                raise InsufficientDataError(message)
            reward = record.reward
            if reward is None:
                reward = 1.0 if record.correct else 0.0
            group.append(
                GroupMember(
                    response_id=record.response_id,
                    edis=edis(record.trajectory, spike_cfg),
                    correct=record.correct,
                    reward=reward,
                )
            )
        if not usable:
            continue
        target = cfg.target_n if cfg.target_n is not None else len(group)
        if target > len(group):
            message = (
                f"prompt {prompt_id}: target_n={target} exceeds group size {len(group)}"
            )
            if lenient:
                logger.warning("%s (group skipped)", message)
                continue
            raise GroupSizeError(message)
        batches.append(
            GroupBatch(prompt_id=prompt_id, members=tuple(group), target_n=target)
        )
    return batches


def _cmd_curate(args: argparse.Namespace, cfg: RunConfig) -> int:
    records = parse_trace(args.in_path, lenient=args.lenient)
    batches = _curation_batches(records, cfg, args.lenient)
    stats = None
    if cfg.zscore_scope is ZScoreScope.BATCH:
        all_edis = [m.edis for batch in batches for m in batch.members]
        if all_edis:
            stats = log_edis_stats(all_edis)
    rows = []
    kept_total = 0
    member_total = 0
    for batch in batches:
        weights = sequence_weights(batch, alpha=cfg.alpha, stats=stats)
        kept_ids = set(sequence_filter(batch))
        kept_total += len(kept_ids)
        member_total += len(batch)
        for member, mw in zip(batch.members, weights.members):
            rows.append(
                {
                    "prompt_id": batch.prompt_id,
                    "response_id": member.response_id,
                    "edis": member.edis,
                    "correct": member.correct,
                    "reward": member.reward,
                    "kept": member.response_id in kept_ids,
                    "z": mw.z,
                    "signed_s": mw.signed_s,
                    "raw_w": mw.raw_w,
                    "norm_w": mw.norm_w,
                    "advantage": mw.advantage,
                    "weighted_advantage": mw.weighted_advantage,
                }
            )
    aggregate = {
        "kind": "aggregate",
        "prompts": len(batches),
        "members": member_total,
        "kept": kept_total,
    }
    with _open_out(args.out) as out:
        _emit(out, _header("curate", cfg))
        for row in rows:
            _emit(out, row)
        _emit(out, aggregate)
    return EXIT_OK


# ---------------------------------------------------------------- eval


def _metric_direction(metric: ConfidenceKind) -> Direction:
    from .confidence import DIRECTION_FOR_KIND

    return DIRECTION_FOR_KIND[metric]


def _number_or_none(row: dict, key: str) -> float | None:
    value = row.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TraceFormatError(f"field {key!r} must be a number, got {value!r}")
    return float(value)


def _null_safe(fn, *args):
    try:
        return fn(*args)
    except (
        UndefinedCorrelationError,
        UndefinedEffectError,
        UndefinedRatioError,
        ValueError,
    ) as exc:
        logger.warning("statistic unavailable: %s", exc)
        return None


def _checkpoint_block(path: str) -> dict:
    points = []
    for row in read_jsonl(path):
        if "kind" in row:
            continue
        try:
            points.append(
                CheckpointPoint(
                    step=int(row["step"]),
                    mean_spikes_correct=float(row["mean_spikes_correct"]),
                    mean_spikes_incorrect=float(row["mean_spikes_incorrect"]),
                )
            )
        except (KeyError, TypeError, ValueError) as exc:
            raise TraceFormatError(f"checkpoint series row {row!r}: {exc}") from exc
    series = CheckpointSeries(points=tuple(points))
    rows = []
    ratios = []
    for point in series.points:
        ratio = _null_safe(
            spike_ratio, [point.mean_spikes_correct], [point.mean_spikes_incorrect]
        )
        rows.append({"step": point.step, "ratio": ratio})
        if ratio is not None:
            ratios.append(ratio)
    summary = None
    if ratios:
        n = len(ratios)
        mean = sum(ratios) / n
        var = sum((r - mean) ** 2 for r in ratios) / n
        summary = {
            "points": n,
            "min": min(ratios),
            "max": max(ratios),
            "mean": mean,
            "sd": var**0.5,
        }
    return {"rows": rows, "summary": summary}


def _cmd_eval(args: argparse.Namespace, cfg: RunConfig) -> int:
    raw_rows = read_jsonl(args.in_path)
    data_rows = [r for r in raw_rows if isinstance(r, dict) and "kind" not in r]
    metric_key = cfg.metric.value
    used = []
    n_unlabeled = 0
    n_missing_metric = 0
    for row in data_rows:
        correct = row.get("correct")
        if correct is None:
            n_unlabeled += 1
            continue
        if not isinstance(correct, bool):
            raise TraceFormatError(f"field 'correct' must be a boolean, got {correct!r}")
        value = _number_or_none(row, metric_key)
        if value is None:
            n_missing_metric += 1
            continue
        used.append((row, value, correct))
    if not used:
        raise InsufficientDataError(
            f"no usable rows: need non-null {metric_key!r} and 'correct' fields"
        )
    direction = _metric_direction(cfg.metric)
    score_set = LabeledScoreSet(
        items=tuple((value, correct) for _, value, correct in used),
        direction=direction,
    )
    auc = roc_auc(score_set)
    retention = [
        {"fraction": q, "accuracy": acc}
        for q, acc in retention_accuracy(score_set, cfg.retention)
    ]
    metric_values = [value for _, value, _ in used]
    correct_01 = [1.0 if correct else 0.0 for _, _, correct in used]
    correlations = {
        "metric_vs_correct": {
            "pearson": _null_safe(pearson, metric_values, correct_01),
            "spearman": _null_safe(spearman, metric_values, correct_01),
        }
    }
    paired = [
        (_number_or_none(row, "edis"), _number_or_none(row, "mean_entropy"))
        for row in data_rows
    ]
    paired = [(e, m) for e, m in paired if e is not None and m is not None]
    if len(paired) >= 2:
        correlations["edis_vs_mean_entropy"] = {
            "pearson": _null_safe(pearson, [e for e, _ in paired], [m for _, m in paired]),
            "spearman": _null_safe(spearman, [e for e, _ in paired], [m for _, m in paired]),
        }
    else:
        correlations["edis_vs_mean_entropy"] = {"pearson": None, "spearman": None}
    diff_correct = []
    diff_incorrect = []
    combined_correct = []
    combined_incorrect = []
    for row, _, correct in used:
        diff = _number_or_none(row, "diff_count")
        burst = _number_or_none(row, "burst_count")
        rebound = _number_or_none(row, "rebound_count")
        if diff is not None:
            (diff_correct if correct else diff_incorrect).append(diff)
        if burst is not None and rebound is not None:
            (combined_correct if correct else combined_incorrect).append(burst + rebound)
    result = {
        "kind": "eval",
        "metric": metric_key,
        "rows": len(data_rows),
        "used": len(used),
        "excluded_unlabeled": n_unlabeled,
        "excluded_missing_metric": n_missing_metric,
        "auc": auc,
        "retention": retention,
        "correlations": correlations,
        "diff_cohens_d": (
            _null_safe(cohens_d, diff_correct, diff_incorrect)
            if diff_correct and diff_incorrect
            else None
        ),
        "diff_spike_ratio": (
            _null_safe(spike_ratio, diff_correct, diff_incorrect)
            if diff_correct and diff_incorrect
            else None
        ),
        "combined_spike_ratio": (
            _null_safe(spike_ratio, combined_correct, combined_incorrect)
            if combined_correct and combined_incorrect
            else None
        ),
    }
    if args.checkpoint_series:
        result["checkpoints"] = _checkpoint_block(args.checkpoint_series)
    with _open_out(args.out) as out:
        _emit(out, _header("eval", cfg))
        _emit(out, result)
    return EXIT_OK


# ---------------------------------------------------------------- heatmap


_UNSAFE_NAME = re.compile(r"[^A-Za-z0-9_.-]")


def _cmd_heatmap(args: argparse.Namespace, cfg: RunConfig) -> int:
    records = parse_trace(args.in_path, lenient=args.lenient)
    out_dir = Path(args.out) if args.out else Path(".")
    out_dir.mkdir(parents=True, exist_ok=True)
    spike_cfg = cfg.spike()
    written = []
    for record in records:
        name = _UNSAFE_NAME.sub(
            "_", f"{record.prompt_id}--{record.response_id}.html"
        )
        try:
            path = export_heatmap(record, spike_cfg, out_dir / name)
        except MissingTokenTextError as exc:
            if args.lenient:
                logger.warning("%s (skipped)", exc)
                continue
            raise
        written.append({"prompt_id": record.prompt_id,
                        "response_id": record.response_id,
                        "path": str(path)})
    _emit(sys.stdout, _header("heatmap", cfg, {"files": len(written)}))
    for row in written:
        _emit(sys.stdout, row)
    return EXIT_OK


# ---------------------------------------------------------------- gen


def _int_pair(text: str) -> tuple[int, int]:
    parts = text.split(",")
    if len(parts) != 2:
        raise argparse.ArgumentTypeError(f"expected LO,HI got {text!r}")
    try:
        return int(parts[0]), int(parts[1])
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _float_list(text: str) -> tuple[float, ...]:
    try:
        return tuple(float(p) for p in text.split(",") if p != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated floats, got {text!r}")


def _cmd_gen(args: argparse.Namespace, cfg: RunConfig) -> int:
    spike_cfg = cfg.spike()
    if args.pools is not None:
        records = generate_pool_corpus(
            pools=args.pools,
            pool_size=args.pool_size,
            correct_rate=args.correct_rate,
            seed=cfg.seed,
            length_range=args.length_range,
            base_entropy=args.base_entropy,
            noise_scale=args.noise,
            event_range=args.events,
            spike=spike_cfg,
            with_tokens=args.with_tokens,
            vocab_size=args.vocab_size,
        )
        extra = {
            "mode": "pools",
            "pools": args.pools,
            "pool_size": args.pool_size,
            "correct_rate": args.correct_rate,
        }
    else:
        profile = SyntheticProfile(
            kind=ProfileKind(args.profile),
            length_range=args.length_range,
            base_entropy=args.base_entropy,
            noise_scale=args.noise,
            event_range=args.events,
            seed=cfg.seed,
            spike=spike_cfg,
        )
        records = generate_synthetic(
            profile,
            args.count,
            prompt_prefix=args.prompt_prefix,
            with_tokens=args.with_tokens,
            vocab_size=args.vocab_size,
        )
        extra = {"mode": "flat", "profile": args.profile, "count": args.count}
    extra.update(
        length_range=list(args.length_range),
        base_entropy=args.base_entropy,
        noise=args.noise,
        events=list(args.events),
        with_tokens=args.with_tokens,
        vocab_size=args.vocab_size,
    )
    header = _header("gen", cfg, extra)
    with _open_out(args.out) as out:
        _emit(out, header)
        for record in records:
            _emit(out, record_to_dict(record))
    return EXIT_OK


# ---------------------------------------------------------------- parser


def _add_common(parser: argparse.ArgumentParser, needs_in: bool = True) -> None:
    if needs_in:
        parser.add_argument("--in", dest="in_path", required=True,
                            help="input JSONL file")
    parser.add_argument("--out", default=None,
                        help="output path (default: stdout)")
    parser.add_argument("--config", default=None,
                        help="JSON config file; flags override its values")
    parser.add_argument("--seed", type=int, default=None,
                        help="rng seed recorded in the report header")
    parser.add_argument("--lenient", action="store_true",
                        help="skip malformed lines/groups with warnings instead of failing")
    parser.add_argument("--window", type=int, default=None, metavar="W",
                        help="burst window length in tokens")
    parser.add_argument("--tau-burst", type=float, default=None,
                        help="burst threshold, nats")
    parser.add_argument("--tau-rebound", type=float, default=None,
                        help="rebound threshold, nats")
    parser.add_argument("--tau-diff", type=float, default=None,
                        help="adjacent-step diff threshold, nats")


def _add_metric(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--metric", choices=sorted(METRIC_ALIASES), default=None,
                        help="confidence metric (edis | entropy | sc)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="entrodyn",
        description="Entropy-trajectory instability scoring, selection, and curation.",
        epilog=(
            "exit codes: 0 ok; 2 usage; 3 missing input file; "
            "4 malformed data; 5 insufficient or degenerate data"
        ),
    )
    parser.add_argument("--version", action="version", version=f"entrodyn {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("score", help="per-response metrics from a trace file")
    _add_common(p)
    p.set_defaults(func=_cmd_score)

    p = sub.add_parser("select", help="best-k-of-N filtering and pool metrics")
    _add_common(p)
    _add_metric(p)
    p.add_argument("--k", type=int, default=None, help="candidates kept per prompt")
    p.add_argument("--m", type=int, default=None,
                   help="oversampling multiplier; pools use the first m*k candidates")
    p.set_defaults(func=_cmd_select)

    p = sub.add_parser("vote", help="majority and score-weighted voting per prompt")
    _add_common(p)
    _add_metric(p)
    p.add_argument("--epsilon", type=float, default=None,
                   help="weight smoothing for lower-is-confident metrics")
    p.set_defaults(func=_cmd_vote)

    p = sub.add_parser("curate", help="filtering decisions and advantage weights per group")
    _add_common(p)
    p.add_argument("--alpha", type=float, default=None,
                   help="softmax temperature for sequence weighting")
    p.add_argument("--target-n", type=int, default=None,
                   help="members kept by the filter (default: group size)")
    p.add_argument("--zscore-scope", choices=[s.value for s in ZScoreScope],
                   default=None, help="z-score moments per group or whole batch")
    p.set_defaults(func=_cmd_curate)

    p = sub.add_parser("eval", help="AUC, correlations, retention, effect sizes, ratios")
    _add_common(p)
    _add_metric(p)
    p.add_argument("--retention", type=_float_list, default=None, metavar="Q1,Q2,...",
                   help="retention fractions in (0,1]")
    p.add_argument("--checkpoint-series", default=None, metavar="FILE",
                   help="JSONL of {step, mean_spikes_correct, mean_spikes_incorrect}")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("heatmap", help="HTML heatmaps, one file per response")
    _add_common(p)
    p.set_defaults(func=_cmd_heatmap)

    p = sub.add_parser("gen", help="synthetic trace files")
    _add_common(p, needs_in=False)
    p.add_argument("--profile", choices=[k.value for k in ProfileKind], default=None,
                   help="flat mode: one record per prompt from this profile")
    p.add_argument("--count", type=int, default=100,
                   help="flat mode: number of records")
    p.add_argument("--prompt-prefix", default="prompt",
                   help="flat mode: prompt id prefix")
    p.add_argument("--pools", type=int, default=None,
                   help="pools mode: number of prompts")
    p.add_argument("--pool-size", type=int, default=16,
                   help="pools mode: candidates per prompt")
    p.add_argument("--correct-rate", type=float, default=0.5,
                   help="pools mode: probability a candidate is correct")
    p.add_argument("--length-range", type=_int_pair, default=(60, 120), metavar="LO,HI",
                   help="trajectory length bounds")
    p.add_argument("--base-entropy", type=float, default=0.3,
                   help="baseline entropy level, nats")
    p.add_argument("--noise", type=float, default=0.0,
                   help="gaussian noise scale, nats")
    p.add_argument("--events", type=_int_pair, default=(1, 3), metavar="LO,HI",
                   help="injected events per record")
    p.add_argument("--with-tokens", action="store_true",
                   help="emit token objects with text instead of flat entropies")
    p.add_argument("--vocab-size", type=int, default=None,
                   help="attach a vocabulary size (enables self-certainty)")
    p.set_defaults(func=_cmd_gen)
    return parser


def _fail(code: int, exc: BaseException) -> int:
    record = {
        "kind": "error",
        "error": type(exc).__name__,
        "message": str(exc),
        "exit_code": code,
    }
    print(json.dumps(record, ensure_ascii=False), file=sys.stderr)
    return code


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen":
        if (args.pools is None) == (args.profile is None):
            parser.error("gen needs exactly one of --profile or --pools")
    overrides = {
        "window_w": getattr(args, "window", None),
        "tau_burst": getattr(args, "tau_burst", None),
        "tau_rebound": getattr(args, "tau_rebound", None),
        "tau_diff": getattr(args, "tau_diff", None),
        "k": getattr(args, "k", None),
        "m": getattr(args, "m", None),
        "metric": getattr(args, "metric", None),
        "epsilon": getattr(args, "epsilon", None),
        "alpha": getattr(args, "alpha", None),
        "target_n": getattr(args, "target_n", None),
        "zscore_scope": getattr(args, "zscore_scope", None),
        "retention": getattr(args, "retention", None),
        "seed": getattr(args, "seed", None),
    }
    try:
        cfg = resolve_config(args.config, overrides)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        return _fail(EXIT_MISSING_INPUT, exc)
    except TraceFormatError as exc:
        return _fail(EXIT_BAD_DATA, exc)
    except ValueError as exc:
        return _fail(EXIT_USAGE, exc)
    try:
        return args.func(args, cfg)
    except (FileNotFoundError, IsADirectoryError, PermissionError) as exc:
        return _fail(EXIT_MISSING_INPUT, exc)
    except _DATA_ERRORS as exc:
        return _fail(EXIT_INSUFFICIENT, exc)
    except EntrodynError as exc:
        return _fail(EXIT_BAD_DATA, exc)
    except ValueError as exc:
        return _fail(EXIT_USAGE, exc)


if __name__ == "__main__":
    sys.exit(main())
