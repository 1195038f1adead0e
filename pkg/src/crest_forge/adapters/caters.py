"""Short-story event annotations in brat standoff.

R lines relate two T-line event spans; only CAUSE_* and ENABLE_* relation
types count as causal, with Arg1 the cause. Temporal-only types are skipped.
"""

from __future__ import annotations

from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization
from .because import _parse_t_line
from .common import Range, cause_effect_parts, expand_files, load_text
from .records import SkipReason, SkipRecord


def _is_causal(rel_type: str) -> bool:
    return rel_type.startswith("CAUSE") or rel_type.startswith("ENABLE")


def parse_caters(paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for ann in expand_files(paths, suffix=".ann"):
        source = ann.with_suffix(".txt")
        doc = load_text(source, policy) if source.exists() else None
        spans: dict[str, list[Range]] = {}
        links: list[tuple[str, str]] = []
        for line in ann.read_text(encoding="utf-8").splitlines():
            if line.startswith("T"):
                parsed = _parse_t_line(line)
                if parsed:
                    spans[parsed[0]] = parsed[1]
            elif line.startswith("R"):
                parts = line.split("\t")
                if len(parts) >= 2:
                    links.append((parts[0].strip(), parts[1].strip()))

        for r_id, body in links:
            original_id = f"{ann.stem}:{r_id}"
            if doc is None:
                skips.append(SkipRecord(original_id, SkipReason.MISSING_TEXT, str(source)))
                continue
            bits = body.split()
            args = dict(a.partition(":")[::2] for a in bits[1:])
            rel_type = bits[0] if bits else ""
            if not _is_causal(rel_type):
                skips.append(
                    SkipRecord(original_id, SkipReason.EXCLUDED_RELATION_TYPE, rel_type)
                )
                continue
            cause = spans.get(args.get("Arg1", ""))
            effect = spans.get(args.get("Arg2", ""))
            if cause is None or effect is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "unresolved argument"))
                continue
            parts_out = cause_effect_parts(doc, cause, effect, [], policy)
            if parts_out is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad spans"))
                continue
            context, span1, span2, _, direction = parts_out
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=6,
                    span1=span1,
                    span2=span2,
                    signal=TokenSpan.empty(),
                    context=context,
                    label=1,
                    direction=direction,
                )
            )
    return relations, skips
