"""Event storyline documents in CAT XML.

Tokens carry sentence numbers; markables anchor token ids; PLOT_LINK
relations connect a source and a target markable, with the relType naming
which side is the cause. The document text is rebuilt by joining tokens
with single spaces, so offsets are computed directly.
"""

from __future__ import annotations

import xml.etree.ElementTree as ET
from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization, nfc
from .common import expand_files
from .records import SkipReason, SkipRecord

_CAUSE_IS_SOURCE = {"PRECONDITION": 0, "FALLING_ACTION": 1}


class _Doc:
    def __init__(self, root: ET.Element, policy: Normalization):
        words: list[str] = []
        self.tok_range: dict[str, tuple[int, int]] = {}
        self.tok_sentence: dict[str, int] = {}
        self.sent_range: dict[int, tuple[int, int]] = {}
        pos = 0
        for tok in root.iter("token"):
            word = tok.text or ""
            if policy is not Normalization.NONE:
                word = nfc(word)
            if words:
                pos += 1
            start = pos
            pos += len(word)
            words.append(word)
            t_id = tok.get("t_id", "")
            sent = int(tok.get("sentence", "0"))
            self.tok_range[t_id] = (start, pos)
            self.tok_sentence[t_id] = sent
            lo, hi = self.sent_range.get(sent, (start, pos))
            self.sent_range[sent] = (min(lo, start), max(hi, pos))
        self.text = " ".join(words)

        self.markables: dict[str, list[str]] = {}
        markables = root.find("Markables")
        if markables is not None:
            for m in markables:
                m_id = m.get("m_id")
                if m_id is None:
                    continue
                self.markables[m_id] = [a.get("t_id", "") for a in m.findall("token_anchor")]

    def span(self, m_id: str) -> TokenSpan | None:
        anchors = self.markables.get(m_id)
        if not anchors or any(t not in self.tok_range for t in anchors):
            return None
        ordered = sorted(anchors, key=lambda t: self.tok_range[t])
        offsets = tuple(self.tok_range[t] for t in ordered)
        tokens = tuple(self.text[s:e] for s, e in offsets)
        return TokenSpan(tokens, offsets)

    def sentences_of(self, m_ids: Sequence[str]) -> tuple[int, int]:
        sents = [self.tok_sentence[t] for m in m_ids for t in self.markables.get(m, ())]
        lo = self.sent_range[min(sents)][0]
        hi = self.sent_range[max(sents)][1]
        return lo, hi


def _shift(span: TokenSpan, delta: int) -> TokenSpan:
    return TokenSpan(span.tokens, tuple((s - delta, e - delta) for s, e in span.offsets))


def parse_eventstoryline(
    paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS
):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for path in expand_files(paths, suffix=".xml"):
        root = ET.parse(path).getroot()
        doc = _Doc(root, policy)
        rels = root.find("Relations")
        if rels is None:
            continue
        for link in rels.findall("PLOT_LINK"):
            r_id = link.get("r_id", "?")
            original_id = f"{path.stem}:{r_id}"
            rel_type = link.get("relType", "")
            if rel_type not in _CAUSE_IS_SOURCE:
                skips.append(
                    SkipRecord(original_id, SkipReason.EXCLUDED_RELATION_TYPE, rel_type)
                )
                continue
            source = link.find("source")
            target = link.find("target")
            if source is None or target is None:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "missing endpoint"))
                continue
            m_ids = [source.get("m_id", ""), target.get("m_id", "")]
            signal_id = link.get("SIGNAL")
            if signal_id:
                m_ids.append(signal_id)
            spans = [doc.span(m) for m in m_ids]
            if any(s is None for s in spans):
                skips.append(
                    SkipRecord(original_id, SkipReason.MALFORMED, "unresolvable markable")
                )
                continue
            lo, hi = doc.sentences_of(m_ids)
            context = doc.text[lo:hi]
            span1 = _shift(spans[0], lo)
            span2 = _shift(spans[1], lo)
            signal = _shift(spans[2], lo) if signal_id else TokenSpan.empty()
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=5,
                    span1=span1,
                    span2=span2,
                    signal=signal,
                    context=context,
                    label=1,
                    direction=_CAUSE_IS_SOURCE[rel_type],
                )
            )
    return relations, skips
