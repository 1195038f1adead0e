"""TimeML documents with causal links between event instances.

EVENT and C-SIGNAL extents are recovered by flattening the TEXT element.
CLINK elements point from the causing event instance to the caused one and
may name a C-SIGNAL; instances resolve to events via MAKEINSTANCE.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization, nfc
from .common import Range, cause_effect_parts, expand_files
from .records import SkipReason, SkipRecord


def _flatten(text_elem: ET.Element, policy: Normalization):
    """Return the tag-free text plus extents of EVENT and C-SIGNAL elements."""
    parts: list[str] = []
    length = 0
    extents: dict[tuple[str, str], Range] = {}

    def emit(chunk: str | None):
        nonlocal length
        if not chunk:
            return
        if policy is not Normalization.NONE:
            chunk = nfc(chunk)
        parts.append(chunk)
        length += len(chunk)

    def visit(elem: ET.Element):
        start = length
        emit(elem.text)
        for child in elem:
            visit(child)
            emit(child.tail)
        key = None
        if elem.tag == "EVENT":
            key = ("event", elem.get("eid", ""))
        elif elem.tag == "C-SIGNAL":
            key = ("signal", elem.get("cid", ""))
        if key:
            extents[key] = (start, length)

    visit(text_elem)
    return "".join(parts), extents


def parse_causal_timebank(
    paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS
):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for path in expand_files(paths, suffix=".tml"):
        root = ET.parse(path).getroot()
        text_elem = root.find("TEXT")
        if text_elem is None:
            continue
        doc, extents = _flatten(text_elem, policy)
        instance_event = {
            mi.get("eiid", ""): mi.get("eventID", "") for mi in root.iter("MAKEINSTANCE")
        }
        for link in root.iter("CLINK"):
            original_id = f"{path.stem}:{link.get('lid', '?')}"
            cause_eid = instance_event.get(link.get("eventInstanceID", ""))
            effect_eid = instance_event.get(link.get("relatedToEventInstance", ""))
            cause = extents.get(("event", cause_eid or ""))
            effect = extents.get(("event", effect_eid or ""))
            if cause is None or effect is None:
                skips.append(
                    SkipRecord(original_id, SkipReason.MALFORMED, "unresolved event instance")
                )
                continue
            signal_ranges: list[Range] = []
            signal_id = link.get("c-signalID")
            if signal_id:
                signal_extent = extents.get(("signal", signal_id))
                if signal_extent is None:
                    skips.append(
                        SkipRecord(original_id, SkipReason.MALFORMED, "unresolved signal")
                    )
                    continue
                signal_ranges.append(signal_extent)
            parts_out = cause_effect_parts(doc, [cause], [effect], signal_ranges, policy)
            if parts_out is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "bad spans"))
                continue
            context, span1, span2, signal, direction = parts_out
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=4,
                    span1=span1,
                    span2=span2,
                    signal=signal,
                    context=context,
                    label=1,
                    direction=direction,
                )
            )
    return relations, skips
