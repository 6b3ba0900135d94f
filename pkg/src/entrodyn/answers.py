"""Answer extraction from generated text.

Math-benchmark convention: the final answer is the last `\\boxed{...}`
expression. Extraction scans for balanced braces; normalization is purely
syntactic (whitespace, trailing periods, integer-valued decimals). Semantic
equivalence (fractions vs decimals) is out of scope; swap in a richer
normalizer upstream if a benchmark needs it.
"""

from __future__ import annotations

import re

_BOX_MARKER = "\\boxed{"
_WS_RUN = re.compile(r"\s+")
_INT_DECIMAL = re.compile(r"([+-]?)(\d+)\.(\d*)")


def _balanced_content(text: str, start: int) -> str | None:
    """Content of the brace group opening at ``start`` (index of '{'), or None."""
    depth = 1
    for idx in range(start + 1, len(text)):
        ch = text[idx]
        if ch == "{":
            depth += 1
        elif ch == "}":
            depth -= 1
            if depth == 0:
                return text[start + 1 : idx]
    return None


def normalize_answer(raw: str) -> str | None:
    """Trim, collapse whitespace, strip trailing periods, canonicalize "3.0" -> "3"."""
    s = _WS_RUN.sub(" ", raw.strip())
    s = s.rstrip(".").strip()
    match = _INT_DECIMAL.fullmatch(s)
    if match and set(match.group(3)) <= {"0"}:
        s = match.group(1) + match.group(2)
    return s if s else None


def extract_answer(raw_text: str) -> str | None:
    """Normalized content of the last balanced boxed expression, or None."""
    found: str | None = None
    search_from = 0
    while True:
        marker = raw_text.find(_BOX_MARKER, search_from)
        if marker == -1:
            break
        content = _balanced_content(raw_text, marker + len(_BOX_MARKER) - 1)
        if content is not None:
            found = content
        search_from = marker + len(_BOX_MARKER)
    if found is None:
        return None
    return normalize_answer(found)
