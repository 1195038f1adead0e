"""Choice-of-plausible-alternatives XML.

Every item yields two relations, one per alternative. The context is the
premise and the alternative joined by a space; the chosen alternative is
labelled causal with the direction given by the asks-for attribute, the
rejected one is labelled non-causal.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Sequence

from ..model import NO_DIRECTION, CrestRelation, TokenSpan
from ..textutil import Normalization, collapse_ws_with_map, nfc, tokens_with_offsets
from .common import expand_files
from .records import SkipReason, SkipRecord


def _clean(text: str | None, policy: Normalization) -> str | None:
    if text is None:
        return None
    text = text.strip()
    if not text:
        return None
    if policy is not Normalization.NONE:
        text, _ = collapse_ws_with_map(nfc(text))
    return text


def parse_copa(paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for path in expand_files(paths, suffix=".xml"):
        root = ET.parse(path).getroot()
        for item in root.iter("item"):
            item_id = item.get("id", "?")
            asks_for = item.get("asks-for")
            plausible = item.get("most-plausible-alternative")
            premise = _clean(item.findtext("p"), policy)
            alts = [_clean(item.findtext("a1"), policy), _clean(item.findtext("a2"), policy)]
            if (
                asks_for not in ("cause", "effect")
                or plausible not in ("1", "2")
                or premise is None
                or None in alts
            ):
                skips.append(
                    SkipRecord(item_id, SkipReason.MALFORMED, "incomplete item")
                )
                continue
            for n, alt in enumerate(alts, start=1):
                context = f"{premise} {alt}"
                span1 = TokenSpan(*tokens_with_offsets(context, 0, len(premise)))
                span2 = TokenSpan(*tokens_with_offsets(context, len(premise) + 1))
                if n == int(plausible):
                    label = 1
                    direction = 1 if asks_for == "cause" else 0
                else:
                    label, direction = 0, NO_DIRECTION
                relations.append(
                    CrestRelation(
                        original_id=f"{item_id}_{n}",
                        dataset_id=8,
                        span1=span1,
                        span2=span2,
                        signal=TokenSpan.empty(),
                        context=context,
                        label=label,
                        direction=direction,
                    )
                )
    return relations, skips
