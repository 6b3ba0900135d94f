"""Line-delimited trace files: parsing, validation, and serialization.

One JSON object per line. Two trajectory encodings are accepted:

  {"prompt_id": "p0", "response_id": "r0", "entropies": [0.3, 1.2, ...], ...}
  {"prompt_id": "p0", "response_id": "r0",
   "tokens": [{"text": "The", "entropy": 0.3},
              {"text": " sum", "top_probs": [0.7, 0.2, 0.1]}], ...}

Optional per-record fields: answer, correct, reward, vocab_size. Header lines
({"kind": "header", ...}) written by report producers are skipped. Malformed
lines raise with their line number, or are skipped with a warning under
lenient parsing.
"""

from __future__ import annotations

import json
import logging
from pathlib import Path
from typing import Iterable, Sequence

from .errors import EntrodynError, TraceFormatError
from .trajectory import (
    EntropyTrajectory,
    ResponseRecord,
    TailMode,
    TokenStep,
    entropy_from_truncated,
)

logger = logging.getLogger(__name__)

# Stored entropy wins over top_probs; disagreement beyond this logs a warning.
ENTROPY_CONSISTENCY_TOL = 1e-3


def _require_str(obj: dict, key: str) -> str:
    value = obj.get(key)
    if not isinstance(value, str) or not value:
        raise TraceFormatError(f"field {key!r} must be a nonempty string")
    return value


def _optional_number(obj: dict, key: str) -> float | None:
    value = obj.get(key)
    if value is None:
        return None
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise TraceFormatError(f"field {key!r} must be a number")
    return float(value)


def _token_step(entry: object, position: int) -> TokenStep:
    if not isinstance(entry, dict):
        raise TraceFormatError(f"token {position} must be an object")
    text = entry.get("text")
    if text is not None and not isinstance(text, str):
        raise TraceFormatError(f"token {position}: 'text' must be a string")
    entropy = _optional_number(entry, "entropy")
    top_probs = entry.get("top_probs")
    if top_probs is not None:
        if not isinstance(top_probs, list) or not all(
            isinstance(p, (int, float)) and not isinstance(p, bool) for p in top_probs
        ):
            raise TraceFormatError(f"token {position}: 'top_probs' must be a number list")
        top_probs = tuple(float(p) for p in top_probs)
    if entropy is None:
        if top_probs is None:
            raise TraceFormatError(
                f"token {position} needs 'entropy' or 'top_probs'"
            )
        entropy = entropy_from_truncated(top_probs, TailMode.SINGLE_BUCKET)
    elif top_probs is not None:
        reconstructed = entropy_from_truncated(top_probs, TailMode.SINGLE_BUCKET)
        if abs(reconstructed - entropy) > ENTROPY_CONSISTENCY_TOL:
            logger.warning(
                "token %d: stored entropy %.6f disagrees with top_probs "
                "reconstruction %.6f; keeping stored value",
                position,
                entropy,
                reconstructed,
            )
    return TokenStep(
        position=position, entropy=entropy, token_text=text, top_probs=top_probs
    )


def record_from_dict(obj: dict) -> ResponseRecord:
    """Build a validated ResponseRecord from one parsed trace object."""
    if not isinstance(obj, dict):
        raise TraceFormatError("record must be a JSON object")
    prompt_id = _require_str(obj, "prompt_id")
    response_id = _require_str(obj, "response_id")
    has_entropies = "entropies" in obj
    has_tokens = "tokens" in obj
    if has_entropies == has_tokens:
        raise TraceFormatError("record needs exactly one of 'entropies' or 'tokens'")
    try:
        if has_entropies:
            entropies = obj["entropies"]
            if not isinstance(entropies, list) or not entropies:
                raise TraceFormatError("'entropies' must be a nonempty number list")
            if not all(
                isinstance(h, (int, float)) and not isinstance(h, bool)
                for h in entropies
            ):
                raise TraceFormatError("'entropies' must be a nonempty number list")
            trajectory = EntropyTrajectory.from_entropies(entropies)
        else:
            tokens = obj["tokens"]
            if not isinstance(tokens, list) or not tokens:
                raise TraceFormatError("'tokens' must be a nonempty list")
            steps = tuple(
                _token_step(entry, i + 1) for i, entry in enumerate(tokens)
            )
            trajectory = EntropyTrajectory(steps)
    except EntrodynError:
        raise
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from exc
    answer = obj.get("answer")
    if answer is not None and not isinstance(answer, str):
        raise TraceFormatError("field 'answer' must be a string")
    correct = obj.get("correct")
    if correct is not None and not isinstance(correct, bool):
        raise TraceFormatError("field 'correct' must be a boolean")
    reward = _optional_number(obj, "reward")
    vocab_size = obj.get("vocab_size")
    if vocab_size is not None and (
        isinstance(vocab_size, bool) or not isinstance(vocab_size, int)
    ):
        raise TraceFormatError("field 'vocab_size' must be an integer")
    try:
        return ResponseRecord(
            prompt_id=prompt_id,
            response_id=response_id,
            trajectory=trajectory,
            answer=answer,
            correct=correct,
            reward=reward,
            vocab_size=vocab_size,
        )
    except EntrodynError:
        raise
    except ValueError as exc:
        raise TraceFormatError(str(exc)) from exc


def record_to_dict(record: ResponseRecord) -> dict:
    """JSON-ready dict; uses the flat 'entropies' form unless tokens carry extras."""
    needs_tokens = any(
        step.token_text is not None or step.top_probs is not None
        for step in record.trajectory.steps
    )
    out: dict = {
        "prompt_id": record.prompt_id,
        "response_id": record.response_id,
    }
    if needs_tokens:
        tokens = []
        for step in record.trajectory.steps:
            token: dict = {}
            if step.token_text is not None:
                token["text"] = step.token_text
            token["entropy"] = step.entropy
            if step.top_probs is not None:
                token["top_probs"] = list(step.top_probs)
            tokens.append(token)
        out["tokens"] = tokens
    else:
        out["entropies"] = list(record.trajectory.entropies)
    if record.answer is not None:
        out["answer"] = record.answer
    if record.correct is not None:
        out["correct"] = record.correct
    if record.reward is not None:
        out["reward"] = record.reward
    if record.vocab_size is not None:
        out["vocab_size"] = record.vocab_size
    return out


def parse_trace(path: str | Path, lenient: bool = False) -> list[ResponseRecord]:
    """Parse a trace file into records, enforcing per-dataset id uniqueness.

    Under ``lenient`` every malformed line is logged and skipped; otherwise the
    first problem raises with its line number. Header lines are ignored.
    """
    records: list[ResponseRecord] = []
    seen: set[tuple[str, str]] = set()
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                record = _parse_line(line)
            except EntrodynError as exc:
                if lenient:
                    logger.warning("line %d skipped: %s", lineno, exc)
                    continue
                raise type(exc)(f"line {lineno}: {exc}") from exc
            if record is None:
                continue
            key = (record.prompt_id, record.response_id)
            if key in seen:
                message = f"line {lineno}: duplicate record id {key!r}"
                if lenient:
                    logger.warning("%s (skipped)", message)
                    continue
                raise TraceFormatError(message)
            seen.add(key)
            records.append(record)
    return records


def _parse_line(line: str) -> ResponseRecord | None:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"invalid JSON: {exc}") from exc
    if isinstance(obj, dict) and obj.get("kind") == "header":
        return None
    return record_from_dict(obj)


def write_trace(
    records: Iterable[ResponseRecord],
    path: str | Path,
    header: dict | None = None,
) -> None:
    """Write records (optionally preceded by a header line) as UTF-8 JSONL."""
    with open(path, "w", encoding="utf-8") as handle:
        if header is not None:
            handle.write(json.dumps(header, ensure_ascii=False) + "\n")
        for record in records:
            handle.write(json.dumps(record_to_dict(record), ensure_ascii=False) + "\n")


def write_jsonl(rows: Iterable[dict], path: str | Path) -> None:
    """Write pre-built JSON objects, one per line."""
    with open(path, "w", encoding="utf-8") as handle:
        for row in rows:
            handle.write(json.dumps(row, ensure_ascii=False) + "\n")


def read_jsonl(path: str | Path) -> list[dict]:
    """Read a JSONL report back into dicts (header lines included)."""
    rows = []
    with open(path, encoding="utf-8") as handle:
        for lineno, line in enumerate(handle, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                rows.append(json.loads(line))
            except json.JSONDecodeError as exc:
                raise TraceFormatError(f"line {lineno}: invalid JSON: {exc}") from exc
    return rows
