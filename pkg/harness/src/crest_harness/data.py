"""Task JSONL reading and marker bookkeeping.

The input contract is one JSON object per line with keys text, target,
original_id, dataset_id, inter_sentence. Files in that shape are what the
corpus toolkit's `sequence` command emits; nothing here depends on how they
were produced.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .config import ConfigurationError, DataError

DEFAULT_MARKERS = (
    "[unused1]",
    "[unused2]",
    "[unused3]",
    "[unused4]",
    "[unused5]",
    "[unused6]",
)


@dataclass(frozen=True)
class TaskExample:
    text: str
    target: int
    original_id: str
    dataset_id: int
    inter_sentence: bool


def _field(obj: dict, key: str, kind: type, line_no: int):
    if key not in obj:
        raise DataError(f"line {line_no}: missing field {key!r}")
    value = obj[key]
    if kind is int and isinstance(value, bool):
        raise DataError(f"line {line_no}: field {key!r} must be an integer")
    if not isinstance(value, kind):
        raise DataError(f"line {line_no}: field {key!r} must be {kind.__name__}")
    return value


def read_task_file(path: str | Path) -> tuple[TaskExample, ...]:
    examples = []
    with open(path, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            if not line.strip():
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise DataError(f"line {line_no}: not valid JSON: {exc.msg}") from None
            target = _field(obj, "target", int, line_no)
            if target not in (0, 1):
                raise DataError(f"line {line_no}: target must be 0 or 1, got {target}")
            examples.append(
                TaskExample(
                    text=_field(obj, "text", str, line_no),
                    target=target,
                    original_id=_field(obj, "original_id", str, line_no),
                    dataset_id=_field(obj, "dataset_id", int, line_no),
                    inter_sentence=_field(obj, "inter_sentence", bool, line_no),
                )
            )
    return tuple(examples)


def check_markers(examples, markers) -> None:
    """Fail when the configured markers never show up in the training data."""
    if not any(marker in ex.text for ex in examples for marker in markers):
        raise ConfigurationError(
            "no configured marker token occurs in any training example; "
            "check --markers against the task files"
        )


def span_token_count(text: str, markers=DEFAULT_MARKERS) -> int:
    """Total tokens inside the two argument spans of a marked sequence."""
    total = 0
    for open_marker, close_marker in ((markers[0], markers[1]), (markers[2], markers[3])):
        start = text.find(open_marker)
        if start < 0:
            continue
        start += len(open_marker)
        end = text.find(close_marker, start)
        if end < 0:
            continue
        total += len(text[start:end].split())
    return total
