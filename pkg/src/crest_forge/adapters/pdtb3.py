"""Discourse-treebank pipe files next to their raw-text sources.

Each pipe line is Type|ConnSpan|ConnText|Sense|Arg1Span|Arg2Span with
character ranges written s..e and joined by semicolons. Only cause senses
under Contingency are kept; the leaf sense says which argument is the
reason. Arg1 is always span1.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization
from .common import Range, cut_context, expand_files, load_text, token_span
from .records import SkipReason, SkipRecord

_CAUSE_PREFIX = "Contingency.Cause"


def _parse_ranges(field: str) -> list[Range] | None:
    ranges: list[Range] = []
    for part in field.split(";"):
        part = part.strip()
        if not part:
            continue
        lo, dots, hi = part.partition("..")
        if not dots or not lo.isdigit() or not hi.isdigit():
            return None
        ranges.append((int(lo), int(hi)))
    return ranges


def _direction(sense: str) -> int | None:
    """0 when Arg2 holds the result, 1 when it holds the reason, else None."""
    if not sense.startswith(_CAUSE_PREFIX):
        return None
    leaf = sense.rsplit(".", 1)[-1]
    if leaf.startswith("NegResult"):
        return None
    if leaf.startswith("Reason"):
        return 1
    if leaf.startswith("Result"):
        return 0
    return None


def parse_pdtb3(paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for pipe in expand_files(paths, suffix=".pipe"):
        source = pipe.with_suffix(".txt")
        doc = load_text(source, policy) if source.exists() else None
        lines = pipe.read_text(encoding="utf-8").splitlines()
        for n, line in enumerate(lines, start=1):
            if not line.strip():
                continue
            original_id = f"{pipe.stem}:{n}"
            if doc is None:
                skips.append(
                    SkipRecord(original_id, SkipReason.MISSING_TEXT, str(source))
                )
                continue
            fields = line.split("|")
            if len(fields) < 6:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "short line"))
                continue
            _, conn_field, _, sense, arg1_field, arg2_field = fields[:6]
            direction = _direction(sense)
            if direction is None:
                skips.append(SkipRecord(original_id, SkipReason.EXCLUDED_SENSE, sense))
                continue
            arg1 = _parse_ranges(arg1_field)
            arg2 = _parse_ranges(arg2_field)
            conn = _parse_ranges(conn_field)
            if not arg1 or not arg2 or conn is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad spans"))
                continue
            cut = cut_context(doc, arg1 + arg2 + conn, policy)
            if cut is None:
                skips.append(
                    SkipRecord(original_id, SkipReason.MALFORMED, "spans outside text")
                )
                continue
            context, mapped = cut
            span1 = token_span(context, mapped[: len(arg1)])
            span2 = token_span(context, mapped[len(arg1) : len(arg1) + len(arg2)])
            signal = token_span(context, mapped[len(arg1) + len(arg2) :])
            if not span1 or not span2:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "empty argument"))
                continue
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=9,
                    span1=span1,
                    span2=span2,
                    signal=signal,
                    context=context,
                    label=1,
                    direction=direction,
                )
            )
    return relations, skips
