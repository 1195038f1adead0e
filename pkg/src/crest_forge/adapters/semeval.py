"""SemEval relation-classification files.

Input is plain text blocks: a sentence line with inline <e1>..</e1> and
<e2>..</e2> tags (optionally prefixed by an id and wrapped in quotes),
followed by a relation line such as Cause-Effect(e1,e2), optionally suffixed
with = "true"/"false", then an optional Comment line.
"""

from __future__ import annotations

import re
from pathlib import Path
from typing import Sequence

from ..model import CrestRelation, TokenSpan
from ..textutil import Normalization, collapse_ws_with_map, map_range, nfc, tokens_with_offsets
from .common import expand_files
from .records import SkipReason, SkipRecord

_ID_LINE = re.compile(r'^(\S+)\s+"(.*)"\s*$')
_RELATION = re.compile(r'^\s*([A-Za-z][\w+-]*)\((e1,e2|e2,e1)\)(?:\s*=\s*"(true|false)")?\s*$')
_TAGS = ("<e1>", "</e1>", "<e2>", "</e2>")


def _blocks(text: str):
    block: list[str] = []
    for line in text.splitlines():
        if line.strip():
            block.append(line)
        elif block:
            yield block
            block = []
    if block:
        yield block


def _extract_tagged(sentence: str):
    """Strip the four entity tags, returning the bare sentence and both spans."""
    at = {}
    for tag in _TAGS:
        first = sentence.find(tag)
        if first < 0 or sentence.find(tag, first + 1) >= 0:
            return None
        at[tag] = first
    o1, c1, o2, c2 = (at[t] for t in _TAGS)
    if not (o1 < c1 and o2 < c2):
        return None
    if not (c1 + len("</e1>") <= o2 or c2 + len("</e2>") <= o1):
        return None
    out: list[str] = []
    marks: dict[str, int] = {}
    pos = 0
    length = 0
    for tag_at, tag in sorted((at[t], t) for t in _TAGS):
        piece = sentence[pos:tag_at]
        out.append(piece)
        length += len(piece)
        marks[tag] = length
        pos = tag_at + len(tag)
    out.append(sentence[pos:])
    stripped = "".join(out)
    return stripped, (marks["<e1>"], marks["</e1>"]), (marks["<e2>"], marks["</e2>"])


def _parse(paths: Sequence[str | Path], policy: Normalization, dataset_id: int):
    relations: list[CrestRelation] = []
    skips: list[SkipRecord] = []
    for path in expand_files(paths, suffix=".txt"):
        text = path.read_text(encoding="utf-8")
        if policy is not Normalization.NONE:
            text = nfc(text)
        for ordinal, block in enumerate(_blocks(text), start=1):
            m = _ID_LINE.match(block[0])
            sentence = m.group(2) if m else block[0]
            original_id = m.group(1) if m else f"{path.stem}:{ordinal}"

            extracted = _extract_tagged(sentence)
            if extracted is None:
                skips.append(
                    SkipRecord(original_id, SkipReason.MALFORMED, "bad or missing entity tags")
                )
                continue
            bare, raw1, raw2 = extracted

            if len(block) < 2:
                skips.append(SkipRecord(original_id, SkipReason.MALFORMED, "no relation line"))
                continue
            rm = _RELATION.match(block[1])
            if rm is None:
                skips.append(
                    SkipRecord(original_id, SkipReason.MALFORMED, f"bad relation line {block[1]!r}")
                )
                continue
            name, order, flag = rm.groups()

            if policy is Normalization.NONE:
                context, spans = bare, [raw1, raw2]
            else:
                context, pos = collapse_ws_with_map(bare)
                spans = [map_range(pos, s, e) for s, e in (raw1, raw2)]
                if None in spans:
                    skips.append(
                        SkipRecord(original_id, SkipReason.MALFORMED, "entity span is whitespace only")
                    )
                    continue
            span1 = TokenSpan(*tokens_with_offsets(context, *spans[0]))
            span2 = TokenSpan(*tokens_with_offsets(context, *spans[1]))

            if name == "Cause-Effect" and flag != "false":
                label = 1
                direction = 0 if order == "e1,e2" else 1
            else:
                label = 0
                direction = -1
            relations.append(
                CrestRelation(
                    original_id=original_id,
                    dataset_id=dataset_id,
                    span1=span1,
                    span2=span2,
                    signal=TokenSpan.empty(),
                    context=context,
                    label=label,
                    direction=direction,
                )
            )
    return relations, skips


def parse_semeval2007(paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS):
    return _parse(paths, policy, dataset_id=1)


def parse_semeval2010(paths: Sequence[str | Path], policy: Normalization = Normalization.NFC_COLLAPSE_WS):
    return _parse(paths, policy, dataset_id=2)
