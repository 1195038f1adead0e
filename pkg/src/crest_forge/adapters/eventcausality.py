"""Event-pair files with tab-separated offset lines.

Each .rel line is a tag and two character extents into the sibling .txt
document. Only C (causal) lines are kept, with the first extent the cause.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization
from .common import cause_effect_parts, expand_files, load_text
from .records import SkipReason, SkipRecord


def _extent(field: str) -> tuple[int, int] | None:
    bits = field.split()
    if len(bits) != 2 or not bits[0].isdigit() or not bits[1].isdigit():
        return None
    return int(bits[0]), int(bits[1])


def parse_eventcausality(
    paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS
):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for rel_file in expand_files(paths, suffix=".rel"):
        source = rel_file.with_suffix(".txt")
        doc = load_text(source, policy) if source.exists() else None
        lines = rel_file.read_text(encoding="utf-8").splitlines()
        for n, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            original_id = f"{rel_file.stem}:{n}"
            if doc is None:
                skips.append(SkipRecord(original_id, SkipReason.MISSING_TEXT, str(source)))
                continue
            fields = line.split("\t")
            if len(fields) != 3:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad field count"))
                continue
            tag, cause_field, effect_field = fields
            if tag.strip() != "C":
                skips.append(
                    SkipRecord(original_id, SkipReason.EXCLUDED_RELATION_TYPE, tag.strip())
                )
                continue
            cause = _extent(cause_field)
            effect = _extent(effect_field)
            if cause is None or effect is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad extent"))
                continue
            parts_out = cause_effect_parts(doc, [cause], [effect], [], policy)
            if parts_out is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad spans"))
                continue
            context, span1, span2, _, direction = parts_out
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=3,
                    span1=span1,
                    span2=span2,
                    signal=TokenSpan.empty(),
                    context=context,
                    label=1,
                    direction=direction,
                )
            )
    return relations, skips
