"""Serialize relations as marker-token sequences for classifier fine-tuning.

Both spans are wrapped in marker tokens inserted into the context. By
default markers are bound to span identity, so a sequence never reveals
which side is the cause; with_direction rebinds them cause-first. The
inverse operation, strip_markers, recovers the context byte for byte.
"""

from __future__ import annotations

import json
import logging
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

from .model import DEV, TEST, TRAIN, Corpus, CrestError, CrestRelation, TokenSpan
from .textutil import has_boundary_between

log = logging.getLogger(__name__)


class SequenceError(CrestError):
    pass


class Task(str, Enum):
    DIRECTION = "direction"
    PAIR = "pair"


@dataclass(frozen=True)
class MarkerScheme:
    span1_open: str = "[unused1]"
    span1_close: str = "[unused2]"
    span2_open: str = "[unused3]"
    span2_close: str = "[unused4]"
    signal_open: str = "[unused5]"
    signal_close: str = "[unused6]"
    mark_signal: bool = False

    def __post_init__(self):
        markers = self.markers()
        if len(set(markers)) != len(markers) or not all(markers):
            raise ValueError("marker tokens must be distinct and non-empty")

    def markers(self) -> tuple[str, ...]:
        return (
            self.span1_open,
            self.span1_close,
            self.span2_open,
            self.span2_close,
            self.signal_open,
            self.signal_close,
        )


DEFAULT_SCHEME = MarkerScheme()


@dataclass(frozen=True)
class MarkedSequence:
    text: str
    target: int
    task: Task
    original_id: str
    dataset_id: int
    inter_sentence: bool


def _extent(span: TokenSpan) -> tuple[int, int]:
    return span.offsets[0][0], span.offsets[-1][1]


def _check_span(rel: CrestRelation, name: str, span: TokenSpan):
    if not span.tokens:
        raise SequenceError(f"{rel.original_id}: {name} is empty")
    if len(span.tokens) != len(span.offsets):
        raise SequenceError(f"{rel.original_id}: {name} tokens and offsets disagree")
    for token, (start, end) in zip(span.tokens, span.offsets):
        if not 0 <= start < end <= len(rel.context) or rel.context[start:end] != token:
            raise SequenceError(f"{rel.original_id}: {name} does not slice the context")


def to_sequence(
    rel: CrestRelation,
    scheme: MarkerScheme = DEFAULT_SCHEME,
    with_direction: bool = False,
    task: Task = Task.DIRECTION,
) -> MarkedSequence:
    task = Task(task)
    if task is Task.DIRECTION:
        if rel.label != 1 or rel.direction not in (0, 1):
            raise SequenceError(
                f"{rel.original_id}: direction sequences need a directed causal relation"
            )
        target = rel.direction
    else:
        target = rel.label

    _check_span(rel, "span1", rel.span1)
    _check_span(rel, "span2", rel.span2)

    pair1 = (scheme.span1_open, scheme.span1_close)
    pair2 = (scheme.span2_open, scheme.span2_close)
    if with_direction and rel.direction == 1:
        pair1, pair2 = pair2, pair1

    marked = [(_extent(rel.span1), pair1), (_extent(rel.span2), pair2)]
    if scheme.mark_signal and rel.signal:
        _check_span(rel, "signal", rel.signal)
        marked.append((_extent(rel.signal), (scheme.signal_open, scheme.signal_close)))

    used = [m for _, pair in marked for m in pair]
    for marker in used:
        if marker in rel.context:
            raise SequenceError(f"{rel.original_id}: context already contains {marker!r}")

    spans_sorted = sorted(extent for extent, _ in marked)
    for (_, first_end), (second_start, _) in zip(spans_sorted, spans_sorted[1:]):
        if second_start < first_end:
            raise SequenceError(f"{rel.original_id}: marked extents overlap")

    events = []
    for (start, end), (open_marker, close_marker) in marked:
        events.append((start, 1, open_marker + " "))
        events.append((end, 0, " " + close_marker))
    events.sort(key=lambda e: (e[0], e[1]))
    pieces = []
    prev = 0
    for pos, _, insert in events:
        pieces.append(rel.context[prev:pos])
        pieces.append(insert)
        prev = pos
    pieces.append(rel.context[prev:])

    (_, first_end), (second_start, _) = spans_sorted[0], spans_sorted[1]
    return MarkedSequence(
        text="".join(pieces),
        target=target,
        task=task,
        original_id=rel.original_id,
        dataset_id=rel.dataset_id,
        inter_sentence=has_boundary_between(rel.context, first_end, second_start),
    )


def strip_markers(text: str, scheme: MarkerScheme = DEFAULT_SCHEME) -> str:
    """Undo to_sequence, recovering the context exactly."""
    for open_marker, close_marker in (
        (scheme.span1_open, scheme.span1_close),
        (scheme.span2_open, scheme.span2_close),
        (scheme.signal_open, scheme.signal_close),
    ):
        text = text.replace(open_marker + " ", "", 1)
        text = text.replace(" " + close_marker, "", 1)
    return text


def sequence_to_dict(seq: MarkedSequence) -> dict:
    return {
        "text": seq.text,
        "target": seq.target,
        "original_id": seq.original_id,
        "dataset_id": seq.dataset_id,
        "inter_sentence": seq.inter_sentence,
    }


def emit_task_dataset(
    corpus: Corpus,
    task: Task,
    out_dir: str | Path,
    scheme: MarkerScheme = DEFAULT_SCHEME,
    with_direction: bool = False,
) -> dict[str, int]:
    """Write train/dev/test JSONL files for one task; returns line counts."""
    task = Task(task)
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    buckets: dict[int, list[MarkedSequence]] = {TRAIN: [], DEV: [], TEST: []}
    for rel in corpus.relations:
        if rel.split not in buckets:
            raise SequenceError(f"{rel.original_id}: relation has no split assigned")
        if task is Task.DIRECTION and rel.label != 1:
            continue
        buckets[rel.split].append(to_sequence(rel, scheme, with_direction, task))

    counts = {}
    for split, name in ((TRAIN, "train"), (DEV, "dev"), (TEST, "test")):
        path = out_dir / f"{name}.jsonl"
        with open(path, "w", encoding="utf-8", newline="\n") as fh:
            for seq in buckets[split]:
                fh.write(json.dumps(sequence_to_dict(seq), ensure_ascii=False))
                fh.write("\n")
        counts[name] = len(buckets[split])
    if not any(counts.values()):
        log.warning("task %s produced no sequences", task.value)
    return counts
