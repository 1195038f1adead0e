"""Shared text helpers: normalization, whitespace tokenization, sentence spans."""

from __future__ import annotations

import re
import unicodedata
from enum import Enum

# Terminal punctuation followed by whitespace and an uppercase letter.
# Deliberately conservative; abbreviations mid-sentence rarely match.
_SENT_BOUNDARY = re.compile(r"[.!?](?=\s+[A-Z])")
_TOKEN = re.compile(r"\S+")


class Normalization(str, Enum):
    """How source text is canonicalized before character offsets are computed."""

    NONE = "none"
    NFC_COLLAPSE_WS = "nfc+collapse-whitespace"


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


def collapse_ws_with_map(raw: str) -> tuple[str, list[int | None]]:
    """Collapse whitespace runs to single spaces and strip the edges.

    Returns the collapsed string and a position map holding, for every
    non-space index of `raw`, the index of that character in the collapsed
    string (None at whitespace positions).
    """
    out: list[str] = []
    pos: list[int | None] = [None] * len(raw)
    pending = False
    for i, ch in enumerate(raw):
        if ch.isspace():
            pending = bool(out)
        else:
            if pending:
                out.append(" ")
                pending = False
            pos[i] = len(out)
            out.append(ch)
    return "".join(out), pos


def map_range(pos: list[int | None], start: int, end: int) -> tuple[int, int] | None:
    """Map a raw [start, end) range through a collapse position map.

    Endpoints are trimmed to the nearest covered non-space characters.
    Returns None when the range covers nothing but whitespace.
    """
    if start < 0 or end > len(pos):
        return None
    while start < end and pos[start] is None:
        start += 1
    while end > start and pos[end - 1] is None:
        end -= 1
    if start >= end:
        return None
    return pos[start], pos[end - 1] + 1


def normalize_text(text: str, policy: Normalization) -> str:
    """Apply a normalization policy without offset tracking."""
    if policy is Normalization.NONE:
        return text
    collapsed, _ = collapse_ws_with_map(nfc(text))
    return collapsed


def tokens_with_offsets(
    text: str, start: int = 0, end: int | None = None
) -> tuple[tuple[str, ...], tuple[tuple[int, int], ...]]:
    """Whitespace-tokenize text[start:end]; offsets are absolute into text."""
    if end is None:
        end = len(text)
    tokens: list[str] = []
    offsets: list[tuple[int, int]] = []
    for m in _TOKEN.finditer(text, start, end):
        tokens.append(m.group())
        offsets.append((m.start(), m.end()))
    return tuple(tokens), tuple(offsets)


def sentence_spans(text: str) -> list[tuple[int, int]]:
    """Sentence ranges, end-exclusive, including the terminal punctuation.

    Whitespace between sentences belongs to no sentence.
    """
    spans: list[tuple[int, int]] = []
    cur = 0
    for m in _SENT_BOUNDARY.finditer(text):
        end = m.start() + 1
        spans.append((cur, end))
        cur = end
        while cur < len(text) and text[cur].isspace():
            cur += 1
    if cur < len(text):
        spans.append((cur, len(text)))
    return spans


def sentence_window(text: str, lo: int, hi: int) -> tuple[int, int]:
    """Smallest sentence-aligned window of `text` covering [lo, hi)."""
    covering = [(s, e) for s, e in sentence_spans(text) if s < hi and e > lo]
    if not covering:
        return 0, len(text)
    return covering[0][0], covering[-1][1]


def has_boundary_between(context: str, first_end: int, second_start: int) -> bool:
    """True when a sentence boundary falls in [first_end, second_start)."""
    for m in _SENT_BOUNDARY.finditer(context):
        if m.start() >= second_start:
            break
        if m.start() >= first_end:
            return True
    return False
