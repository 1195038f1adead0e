"""Brat standoff annotations for connective-anchored causal frames.

The .ann file holds T lines (text-bound spans, possibly discontiguous) and
E lines (frames). A frame's trigger span becomes the signal; its Cause and
Effect arguments become the two relation spans in text order.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization
from .common import Range, cause_effect_parts, expand_files, load_text
from .records import SkipReason, SkipRecord

_FRAME_TYPES = {"Consequence", "Motivation", "Purpose", "Precondition"}


def _parse_t_line(line: str) -> tuple[str, list[Range]] | None:
    parts = line.split("\t")
    if len(parts) < 2:
        return None
    head = parts[1]
    label, _, span_field = head.partition(" ")
    if not label or not span_field:
        return None
    ranges: list[Range] = []
    for chunk in span_field.split(";"):
        bits = chunk.split()
        if len(bits) != 2 or not bits[0].isdigit() or not bits[1].isdigit():
            return None
        ranges.append((int(bits[0]), int(bits[1])))
    return parts[0].strip(), ranges


def parse_because(paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for ann in expand_files(paths, suffix=".ann"):
        source = ann.with_suffix(".txt")
        doc = load_text(source, policy) if source.exists() else None
        spans: dict[str, list[Range]] = {}
        frames: list[tuple[str, str]] = []
        for line in ann.read_text(encoding="utf-8").splitlines():
            if line.startswith("T"):
                parsed = _parse_t_line(line)
                if parsed:
                    spans[line.split("\t", 1)[0]] = parsed[1]
            elif line.startswith("E"):
                parts = line.split("\t")
                if len(parts) >= 2:
                    frames.append((parts[0].strip(), parts[1].strip()))

        for e_id, body in frames:
            original_id = f"{ann.stem}:{e_id}"
            if doc is None:
                skips.append(SkipRecord(original_id, SkipReason.MISSING_TEXT, str(source)))
                continue
            args = [a.partition(":") for a in body.split()]
            if not args or not args[0][2]:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "no trigger"))
                continue
            frame_type = args[0][0]
            if frame_type not in _FRAME_TYPES:
                skips.append(
                    SkipRecord(original_id, SkipReason.EXCLUDED_RELATION_TYPE, frame_type)
                )
                continue
            trigger = spans.get(args[0][2])
            cause: list[Range] = []
            effect: list[Range] = []
            for role, _, t_id in args[1:]:
                if role.startswith("Cause"):
                    cause += spans.get(t_id, [])
                elif role.startswith("Effect"):
                    effect += spans.get(t_id, [])
            if trigger is None or not cause or not effect:
                skips.append(
                    SkipRecord(original_id, SkipReason.MALFORMED, "missing cause or effect")
                )
                continue
            parts_out = cause_effect_parts(doc, cause, effect, trigger, policy)
            if parts_out is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad spans"))
                continue
            context, span1, span2, signal, direction = parts_out
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=7,
                    span1=span1,
                    span2=span2,
                    signal=signal,
                    context=context,
                    label=1,
                    direction=direction,
                )
            )
    return relations, skips
